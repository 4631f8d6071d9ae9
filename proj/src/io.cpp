#include "fh/io.hpp"

#include <fstream>
#include <sstream>

#include "fh/error.hpp"
#include "fh/exquisite.hpp"

namespace fh {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

} // namespace

FiniteStructure parse_structure(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;

    std::string name;
    int arity = -1;
    enum class GroupKind { None, Id, Sym, Gen } gk = GroupKind::None;
    std::vector<Permutation> gens;
    std::vector<std::string> elements;
    std::vector<std::vector<std::string>> rels;
    bool in_structure = false, ended = false;

    while (std::getline(is, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (ended) err::parse(lineno, "content after 'end'");
        const std::string& kw = toks[0];
        if (kw == "structure") {
            if (in_structure) err::parse(lineno, "nested 'structure'");
            if (toks.size() != 2) err::parse(lineno, "expected: structure <name>");
            name = toks[1];
            in_structure = true;
        } else if (!in_structure) {
            err::parse(lineno, "expected 'structure <name>' first");
        } else if (kw == "arity") {
            if (toks.size() != 2) err::parse(lineno, "expected: arity <n>");
            arity = std::atoi(toks[1].c_str());
            if (arity < 1 || arity > SymmetryGroup::kMaxArity)
                err::parse(lineno, "arity out of range 1..8");
        } else if (kw == "group") {
            if (arity < 0) err::parse(lineno, "'arity' must precede 'group'");
            if (toks.size() < 2) err::parse(lineno, "expected: group id|sym|gen ...");
            if (toks[1] == "id") {
                if (gk != GroupKind::None) err::parse(lineno, "conflicting group lines");
                gk = GroupKind::Id;
            } else if (toks[1] == "sym") {
                if (gk != GroupKind::None) err::parse(lineno, "conflicting group lines");
                gk = GroupKind::Sym;
            } else if (toks[1] == "gen") {
                if (gk != GroupKind::None && gk != GroupKind::Gen)
                    err::parse(lineno, "conflicting group lines");
                gk = GroupKind::Gen;
                if (static_cast<int>(toks.size()) != 2 + arity)
                    err::parse(lineno, "generator needs exactly arity entries");
                std::vector<int> img;
                for (int i = 0; i < arity; ++i) img.push_back(std::atoi(toks[2 + i].c_str()));
                try {
                    gens.push_back(Permutation::from_one_based(img));
                } catch (const Error& e) {
                    err::parse(lineno, e.what());
                }
            } else {
                err::parse(lineno, "unknown group kind '" + toks[1] + "'");
            }
        } else if (kw == "elements") {
            for (std::size_t i = 1; i < toks.size(); ++i) elements.push_back(toks[i]);
        } else if (kw == "rel") {
            if (arity < 0) err::parse(lineno, "'arity' must precede 'rel'");
            if (static_cast<int>(toks.size()) != 1 + arity)
                err::parse(lineno, "relation needs exactly arity entries");
            rels.emplace_back(toks.begin() + 1, toks.end());
        } else if (kw == "end") {
            ended = true;
        } else {
            err::parse(lineno, "unknown keyword '" + kw + "'");
        }
    }
    if (!in_structure) err::parse(lineno, "no 'structure' block found");
    if (!ended) err::parse(lineno, "missing 'end'");
    if (arity < 0) err::parse(lineno, "missing 'arity'");

    SymmetryGroup group;
    switch (gk) {
        case GroupKind::Id: group = SymmetryGroup::trivial(arity); break;
        case GroupKind::Sym: group = SymmetryGroup::full(arity); break;
        case GroupKind::Gen: group = SymmetryGroup::generated(arity, gens); break;
        case GroupKind::None: err::parse(lineno, "missing 'group'");
    }
    try {
        return FiniteStructure(name, group, std::move(elements), rels);
    } catch (const Error& e) {
        throw Error("parse", std::string("invalid structure: ") + e.what());
    }
}

std::string serialize_structure(const FiniteStructure& s) {
    std::ostringstream os;
    os << "structure " << (s.name().empty() ? "unnamed" : s.name()) << "\n";
    os << "arity " << s.arity() << "\n";
    if (s.group().is_trivial()) {
        os << "group id\n";
    } else if (s.group().is_full()) {
        os << "group sym\n";
    } else {
        for (const auto& p : s.group().members()) {
            if (p.is_identity()) continue;
            os << "group gen";
            for (int v : p.one_based()) os << ' ' << v;
            os << "\n";
        }
    }
    const auto& elems = s.elements();
    for (std::size_t i = 0; i < elems.size(); i += 12) {
        os << "elements";
        for (std::size_t j = i; j < elems.size() && j < i + 12; ++j) os << ' ' << elems[j];
        os << "\n";
    }
    for (const auto& r : s.relations()) {
        os << "rel";
        for (int e : r.entries) os << ' ' << elems[e];
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

AtomicType parse_atomic_type(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    AtomicType q;
    int arity = -1, tail = -1;
    bool started = false, ended = false;
    std::vector<std::vector<int>> rels;

    while (std::getline(is, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (ended) err::parse(lineno, "content after 'end'");
        const std::string& kw = toks[0];
        if (kw == "type") {
            if (toks.size() != 2) err::parse(lineno, "expected: type <name>");
            q.name = toks[1];
            started = true;
        } else if (!started) {
            err::parse(lineno, "expected 'type <name>' first");
        } else if (kw == "arity") {
            if (toks.size() != 2) err::parse(lineno, "expected: arity <n>");
            arity = std::atoi(toks[1].c_str());
        } else if (kw == "tail") {
            if (toks.size() != 2) err::parse(lineno, "expected: tail <l>");
            tail = std::atoi(toks[1].c_str());
        } else if (kw == "rel") {
            if (arity < 0) err::parse(lineno, "'arity' must precede 'rel'");
            if (static_cast<int>(toks.size()) != 1 + arity)
                err::parse(lineno, "relation needs exactly arity entries");
            std::vector<int> t;
            for (std::size_t i = 1; i < toks.size(); ++i) t.push_back(std::atoi(toks[i].c_str()));
            rels.push_back(std::move(t));
        } else if (kw == "end") {
            ended = true;
        } else {
            err::parse(lineno, "unknown keyword '" + kw + "'");
        }
    }
    if (!started || !ended) err::parse(lineno, "incomplete type block");
    if (arity < 1 || tail < 0) err::parse(lineno, "missing arity/tail");
    q.arity = arity;
    q.tail_len = tail;
    SymmetryGroup full = SymmetryGroup::full(arity);
    for (auto& t : rels) {
        for (int v : t)
            if (v < 0 || v >= q.var_count()) err::parse(lineno, "relation index out of range");
        q.relations.push_back(OrbitTuple{full.canonicalize(t)});
    }
    std::sort(q.relations.begin(), q.relations.end());
    q.relations.erase(std::unique(q.relations.begin(), q.relations.end()), q.relations.end());
    try {
        q.validate();
    } catch (const Error& e) {
        throw Error("parse", std::string("invalid type: ") + e.what());
    }
    return q;
}

std::string serialize_atomic_type(const AtomicType& q) {
    std::ostringstream os;
    os << "type " << (q.name.empty() ? "unnamed" : q.name) << "\n";
    os << "arity " << q.arity << "\n";
    os << "tail " << q.tail_len << "\n";
    for (const auto& r : q.relations) {
        os << "rel";
        for (int v : r.entries) os << ' ' << v;
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) err::raise("io", "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) err::raise("io", "cannot write '" + path + "'");
    out << content;
}

FiniteStructure load_structure(const std::string& path) {
    return parse_structure(read_file(path));
}

void save_structure(const FiniteStructure& s, const std::string& path) {
    write_file(path, serialize_structure(s));
}

AtomicType load_atomic_type(const std::string& path) {
    return parse_atomic_type(read_file(path));
}

void save_atomic_type(const AtomicType& q, const std::string& path) {
    write_file(path, serialize_atomic_type(q));
}

} // namespace fh
