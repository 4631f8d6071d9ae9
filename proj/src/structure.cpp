#include "fh/structure.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fh/error.hpp"

namespace fh {

std::vector<int> canonicalize(const SymmetryGroup& group, const std::vector<int>& raw) {
    if (static_cast<int>(raw.size()) != group.arity())
        err::raise("arity-mismatch", "tuple length differs from group arity");
    std::set<int> distinct(raw.begin(), raw.end());
    if (distinct.size() != raw.size())
        err::raise("duplicate-entry", "orbit tuple entries must be pairwise distinct");
    return group.canonicalize(raw);
}

FiniteStructure::FiniteStructure(std::string name, SymmetryGroup group,
                                 std::vector<std::string> elements,
                                 const std::vector<std::vector<std::string>>& relations) {
    name_ = std::move(name);
    group_ = std::move(group);
    elems_ = std::move(elements);
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    if (static_cast<int>(elems_.size()) > Bits::kMaxElems)
        err::raise("universe-limit",
                   "universe exceeds " + std::to_string(Bits::kMaxElems) + " elements");
    for (int i = 0; i < static_cast<int>(elems_.size()); ++i) index_[elems_[i]] = i;

    std::vector<std::vector<int>> raw;
    raw.reserve(relations.size());
    for (const auto& rel : relations) {
        std::vector<int> t;
        t.reserve(rel.size());
        for (const auto& e : rel) t.push_back(index_of(e));
        raw.push_back(std::move(t));
    }
    finish(raw);
}

FiniteStructure FiniteStructure::from_indices(std::string name, SymmetryGroup group,
                                              std::vector<std::string> elements,
                                              const std::vector<std::vector<int>>& relations) {
    // Index-based relations refer to positions in the *given* element order;
    // translate to names first since construction sorts the universe.
    std::vector<std::vector<std::string>> by_name;
    by_name.reserve(relations.size());
    for (const auto& rel : relations) {
        std::vector<std::string> t;
        for (int i : rel) {
            if (i < 0 || i >= static_cast<int>(elements.size()))
                err::raise("unknown-element", "relation index out of range");
            t.push_back(elements[i]);
        }
        by_name.push_back(std::move(t));
    }
    return FiniteStructure(std::move(name), std::move(group), std::move(elements), by_name);
}

void FiniteStructure::finish(const std::vector<std::vector<int>>& raw) {
    std::set<OrbitTuple> canon;
    for (const auto& t : raw) canon.insert(OrbitTuple{canonicalize(group_, t)});
    rels_.assign(canon.begin(), canon.end());
    rel_masks_.reserve(rels_.size());
    degrees_.assign(elems_.size(), 0);
    for (const auto& r : rels_) {
        Bits m;
        for (int e : r.entries) {
            m.set(e);
            ++degrees_[e];
        }
        rel_masks_.push_back(m);
    }
}

int FiniteStructure::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) err::raise("unknown-element", "no element named '" + name + "'");
    return it->second;
}

bool FiniteStructure::has_orbit(const OrbitTuple& canonical) const {
    return std::binary_search(rels_.begin(), rels_.end(), canonical);
}

Bits FiniteStructure::mask_of(const std::vector<std::string>& names) const {
    Bits m;
    for (const auto& n : names) m.set(index_of(n));
    return m;
}

std::vector<std::string> FiniteStructure::names_of(const Bits& mask) const {
    std::vector<std::string> out;
    for (int i : mask.to_indices()) out.push_back(elems_[i]);
    return out;
}

int FiniteStructure::relations_inside(const Bits& mask) const {
    int c = 0;
    for (const auto& rm : rel_masks_)
        if (rm.subset_of(mask)) ++c;
    return c;
}

FiniteStructure FiniteStructure::induced(const Bits& mask, const std::string& name) const {
    std::vector<std::string> elems;
    for (int i : mask.to_indices()) {
        if (i >= size()) err::raise("unknown-element", "mask exceeds universe");
        elems.push_back(elems_[i]);
    }
    std::vector<std::vector<std::string>> rels;
    for (std::size_t k = 0; k < rels_.size(); ++k) {
        if (!rel_masks_[k].subset_of(mask)) continue;
        std::vector<std::string> t;
        for (int e : rels_[k].entries) t.push_back(elems_[e]);
        rels.push_back(std::move(t));
    }
    return FiniteStructure(name.empty() ? name_ : name, group_, std::move(elems), rels);
}

FiniteStructure FiniteStructure::renamed(const std::map<std::string, std::string>& map,
                                         const std::string& name) const {
    auto tr = [&](const std::string& s) {
        auto it = map.find(s);
        return it == map.end() ? s : it->second;
    };
    std::vector<std::string> elems;
    for (const auto& e : elems_) elems.push_back(tr(e));
    {
        std::set<std::string> uniq(elems.begin(), elems.end());
        if (uniq.size() != elems.size())
            err::raise("rename-collision", "renaming maps two elements to one name");
    }
    std::vector<std::vector<std::string>> rels;
    for (const auto& r : rels_) {
        std::vector<std::string> t;
        for (int e : r.entries) t.push_back(tr(elems_[e]));
        rels.push_back(std::move(t));
    }
    return FiniteStructure(name.empty() ? name_ : name, group_, std::move(elems), rels);
}

FiniteStructure FiniteStructure::with_name(const std::string& name) const {
    FiniteStructure copy = *this;
    copy.name_ = name;
    return copy;
}

bool FiniteStructure::equal(const FiniteStructure& o) const {
    return group_ == o.group_ && elems_ == o.elems_ && rels_ == o.rels_;
}

namespace {

std::string encode_relations(const std::vector<OrbitTuple>& rels) {
    std::ostringstream os;
    for (const auto& r : rels) {
        for (int e : r.entries) os << e << ',';
        os << ';';
    }
    return os.str();
}

// Minimum over all relabelings of the universe. perm[i] = new label of i.
std::string min_encoding(const FiniteStructure& s, const Bits* marked) {
    int n = s.size();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::string best;
    do {
        std::vector<OrbitTuple> rels;
        rels.reserve(s.relations().size());
        for (const auto& r : s.relations()) {
            std::vector<int> t;
            for (int e : r.entries) t.push_back(perm[e]);
            rels.push_back(OrbitTuple{s.group().canonicalize(t)});
        }
        std::sort(rels.begin(), rels.end());
        std::string enc = encode_relations(rels);
        if (marked) {
            std::vector<int> img;
            for (int i : marked->to_indices()) img.push_back(perm[i]);
            std::sort(img.begin(), img.end());
            enc += '|';
            for (int i : img) enc += std::to_string(i) + ',';
        }
        if (best.empty() || enc < best) best = std::move(enc);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::ostringstream head;
    head << n << '#' << s.arity() << '#' << s.group().order() << '#';
    return head.str() + best;
}

} // namespace

std::string FiniteStructure::canonical_encoding() const { return min_encoding(*this, nullptr); }

std::string FiniteStructure::canonical_encoding_with(const Bits& marked) const {
    return min_encoding(*this, &marked);
}

std::vector<FiniteStructure> free_union_rename(const std::vector<FiniteStructure>& parts,
                                               const std::vector<std::string>& shared) {
    if (parts.empty()) return {};
    std::set<std::string> shared_set(shared.begin(), shared.end());
    const FiniteStructure& first = parts.front();
    for (const auto& n : shared)
        first.index_of(n); // unknown-element if absent
    FiniteStructure shared_ref = first.induced(first.mask_of(shared));
    for (const auto& p : parts) {
        for (const auto& n : shared) p.index_of(n);
        if (!p.induced(p.mask_of(shared)).equal(shared_ref))
            err::raise("shared-mismatch", "parts disagree on the shared substructure");
    }

    std::set<std::string> taken(shared.begin(), shared.end());
    std::vector<FiniteStructure> out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::map<std::string, std::string> ren;
        for (const auto& e : parts[i].elements()) {
            if (shared_set.count(e)) continue;
            std::string cand = e;
            while (taken.count(cand)) cand += "~" + std::to_string(i + 1);
            ren[e] = cand;
            taken.insert(cand);
        }
        out.push_back(parts[i].renamed(ren));
    }
    return out;
}

bool is_induced_embedding(const FiniteStructure& source, const FiniteStructure& target,
                          const std::map<std::string, std::string>& f) {
    std::set<std::string> image;
    std::vector<int> tgt_of(source.size(), -1);
    for (const auto& e : source.elements()) {
        auto it = f.find(e);
        if (it == f.end() || !target.has_element(it->second)) return false;
        if (!image.insert(it->second).second) return false;
        tgt_of[source.index_of(e)] = target.index_of(it->second);
    }
    Bits image_mask;
    for (const auto& n : image) image_mask.set(target.index_of(n));
    // preserves
    std::set<OrbitTuple> mapped;
    for (const auto& r : source.relations()) {
        std::vector<int> t;
        for (int e : r.entries) t.push_back(tgt_of[e]);
        OrbitTuple c{target.group().canonicalize(t)};
        if (!target.has_orbit(c)) return false;
        mapped.insert(c);
    }
    // reflects: no extra relations inside the image
    return target.relations_inside(image_mask) == static_cast<int>(mapped.size());
}

namespace {

// Relations of `a` fully inside the assigned prefix {0..i} must map onto
// orbits of `b`, and the image must carry no extra relations.
bool prefix_consistent(const FiniteStructure& a, const FiniteStructure& b,
                       const std::vector<int>& map, int i) {
    Bits dom, img;
    for (int k = 0; k <= i; ++k) {
        dom.set(k);
        img.set(map[k]);
    }
    int count_a = 0;
    for (std::size_t r = 0; r < a.relations().size(); ++r) {
        if (!a.relation_masks()[r].subset_of(dom)) continue;
        ++count_a;
        std::vector<int> t;
        for (int e : a.relations()[r].entries) t.push_back(map[e]);
        if (!b.has_orbit(OrbitTuple{b.group().canonicalize(t)})) return false;
    }
    return b.relations_inside(img) == count_a;
}

bool extend_iso(const FiniteStructure& a, const FiniteStructure& b, std::vector<int>& map,
                std::vector<bool>& used, int i) {
    int n = a.size();
    if (i == n) return true;
    if (map[i] != -1)
        return prefix_consistent(a, b, map, i) && extend_iso(a, b, map, used, i + 1);
    for (int j = 0; j < n; ++j) {
        if (used[j] || a.degrees()[i] != b.degrees()[j]) continue;
        map[i] = j;
        used[j] = true;
        if (prefix_consistent(a, b, map, i) && extend_iso(a, b, map, used, i + 1)) return true;
        map[i] = -1;
        used[j] = false;
    }
    return false;
}

} // namespace

std::optional<Embedding> find_isomorphism_extending(const FiniteStructure& a,
                                                    const FiniteStructure& b,
                                                    const std::map<std::string, std::string>& partial) {
    if (a.size() != b.size() || !(a.group() == b.group())) return std::nullopt;
    std::vector<int> map(a.size(), -1);
    std::vector<bool> used(b.size(), false);
    for (const auto& [from, to] : partial) {
        int i = a.index_of(from);
        int j = b.index_of(to);
        if (used[j]) return std::nullopt;
        map[i] = j;
        used[j] = true;
    }
    if (!extend_iso(a, b, map, used, 0)) return std::nullopt;
    Embedding emb;
    for (int i = 0; i < a.size(); ++i) emb.map[a.element(i)] = b.element(map[i]);
    if (!is_induced_embedding(a, b, emb.map)) return std::nullopt;
    return emb;
}

std::optional<Embedding> find_isomorphism_over(const FiniteStructure& a,
                                               const FiniteStructure& b,
                                               const std::vector<std::string>& fixed) {
    std::map<std::string, std::string> partial;
    for (const auto& n : fixed) partial[n] = n;
    return find_isomorphism_extending(a, b, partial);
}

bool has_nontrivial_automorphism(const FiniteStructure& s) {
    // Case split on the smallest moved point i and its image j: everything
    // below i is pinned to itself, which prunes hard. Complete.
    for (int i = 0; i < s.size(); ++i) {
        for (int j = i + 1; j < s.size(); ++j) {
            if (s.degrees()[i] != s.degrees()[j]) continue;
            std::map<std::string, std::string> partial;
            for (int k = 0; k < i; ++k) partial[s.element(k)] = s.element(k);
            partial[s.element(i)] = s.element(j);
            if (find_isomorphism_extending(s, s, partial)) return true;
        }
    }
    return false;
}

std::string fresh_name(std::string base, const std::vector<std::string>& taken) {
    std::set<std::string> t(taken.begin(), taken.end());
    while (t.count(base)) base += "'";
    return base;
}

FiniteStructure induced_substructure(const FiniteStructure& m, const Bits& s) {
    return m.induced(s);
}

std::vector<OrbitTuple> all_possible_orbits(const SymmetryGroup& g, int m) {
    std::set<OrbitTuple> out;
    int n = g.arity();
    if (m < n) return {};
    std::vector<int> idx(n);
    std::vector<bool> used(m, false);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            out.insert(OrbitTuple{g.canonicalize(idx)});
            return;
        }
        for (int e = 0; e < m; ++e) {
            if (used[e]) continue;
            used[e] = true;
            idx[pos] = e;
            self(self, pos + 1);
            used[e] = false;
        }
    };
    rec(rec, 0);
    return {out.begin(), out.end()};
}

} // namespace fh
