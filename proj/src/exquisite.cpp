#include "fh/exquisite.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "fh/error.hpp"
#include "fh/io.hpp"
#include "fh/kernels.hpp"
#include "fh/predim.hpp"

namespace fh {

void AtomicType::validate() const {
    if (arity < 3 || arity > SymmetryGroup::kMaxArity)
        err::raise("arity-bound", "atomic type arity must be in 3..8");
    if (tail_len < 0) err::raise("arity-bound", "negative tail length");
    for (const auto& r : relations) {
        if (static_cast<int>(r.entries.size()) != arity)
            err::raise("arity-mismatch", "type relation has wrong arity");
        for (std::size_t i = 0; i < r.entries.size(); ++i) {
            int v = r.entries[i];
            if (v < 0 || v >= var_count())
                err::raise("unknown-element", "type relation index out of range");
            if (i > 0 && r.entries[i - 1] >= v)
                err::raise("duplicate-entry", "type relation not canonical");
        }
    }
}

std::vector<int> TypedTuple::all() const {
    std::vector<int> out = head;
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

Bits TypedTuple::mask() const { return Bits::of(all()); }

namespace {

std::string var_name(const AtomicType& q, int v) {
    return v < q.arity ? "a" + std::to_string(v + 1) : "b" + std::to_string(v - q.arity + 1);
}

} // namespace

FiniteStructure canonical_structure(const AtomicType& q) {
    q.validate();
    std::vector<std::string> elems;
    for (int v = 0; v < q.var_count(); ++v) elems.push_back(var_name(q, v));
    std::vector<std::vector<std::string>> rels;
    for (const auto& r : q.relations) {
        std::vector<std::string> t;
        for (int v : r.entries) t.push_back(var_name(q, v));
        rels.push_back(std::move(t));
    }
    return FiniteStructure(q.name.empty() ? "q" : q.name, SymmetryGroup::full(q.arity),
                           std::move(elems), rels);
}

AtomicType type_of(const FiniteStructure& m, const TypedTuple& at, int arity,
                   const std::string& name) {
    AtomicType q;
    q.name = name;
    q.arity = arity;
    auto all = at.all();
    q.tail_len = static_cast<int>(all.size()) - arity;
    std::vector<int> var_of(m.size(), -1);
    for (std::size_t v = 0; v < all.size(); ++v) var_of[all[v]] = static_cast<int>(v);
    Bits mask = at.mask();
    for (std::size_t i = 0; i < m.relations().size(); ++i) {
        if (!m.relation_masks()[i].subset_of(mask)) continue;
        std::vector<int> t;
        for (int e : m.relations()[i].entries) t.push_back(var_of[e]);
        std::sort(t.begin(), t.end());
        q.relations.push_back(OrbitTuple{std::move(t)});
    }
    std::sort(q.relations.begin(), q.relations.end());
    q.validate();
    return q;
}

std::vector<OrbitTuple> generated_set(const AtomicType& q, const TypedTuple& t) {
    if (static_cast<int>(t.head.size()) != q.arity ||
        static_cast<int>(t.tail.size()) != q.tail_len)
        err::raise("length-mismatch", "tuple lengths do not match the type");
    auto all = t.all();
    std::vector<OrbitTuple> out;
    out.reserve(q.relations.size());
    for (const auto& r : q.relations) {
        std::vector<int> sub;
        sub.reserve(r.entries.size());
        for (int v : r.entries) sub.push_back(all[v]);
        std::sort(sub.begin(), sub.end());
        out.push_back(OrbitTuple{std::move(sub)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

OrbitTuple head_orbit(const AtomicType& q) {
    std::vector<int> h(q.arity);
    for (int i = 0; i < q.arity; ++i) h[i] = i;
    return OrbitTuple{h};
}

} // namespace

bool check_nice(const AtomicType& q) {
    if (q.tail_len < 2 * q.arity) return false;
    if (std::binary_search(q.relations.begin(), q.relations.end(), head_orbit(q))) return false;
    return q.d_q() == q.arity - 1;
}

IntertwinedCheck check_intertwined(const AtomicType& q) {
    FiniteStructure cs = canonical_structure(q);
    auto rel = kernels::Rel32::of(cs);
    auto viol = kernels::intertwined_violation(rel, q.arity);
    if (!viol) return {true, std::nullopt};
    return {false, Bits::from_low32(*viol)};
}

bool check_without_symmetry(const AtomicType& q) {
    return !has_nontrivial_automorphism(canonical_structure(q));
}

namespace {

std::mutex exq_mutex;

} // namespace

bool check_exquisite(const AtomicType& q) {
    static std::unordered_map<std::string, bool> memo;
    std::string key = serialize_atomic_type(q);
    {
        std::lock_guard<std::mutex> lock(exq_mutex);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    bool ok = check_nice(q) && check_intertwined(q).ok && check_without_symmetry(q);
    std::lock_guard<std::mutex> lock(exq_mutex);
    memo.emplace(std::move(key), ok);
    return ok;
}

AtomicType base_exquisite_3() {
    AtomicType q;
    q.name = "exq3";
    q.arity = 3;
    q.tail_len = 8;
    // heads a1 a2 a3 = 0 1 2, tails b1..b8 = 3..10
    const int a1 = 0, a2 = 1, a3 = 2;
    auto b = [](int i) { return 2 + i; }; // b(1) = 3 .. b(8) = 10
    std::vector<std::vector<int>> rels = {
        {a1, b(1), b(2)}, {a2, b(2), b(3)}, {a3, b(1), b(7)},
        {a1, b(3), b(4)}, {a2, b(4), b(5)}, {a3, b(8), b(3)},
        {a1, b(5), b(6)}, {a2, b(6), b(7)},
        {a1, b(7), b(8)},
    };
    for (auto& t : rels) {
        std::sort(t.begin(), t.end());
        q.relations.push_back(OrbitTuple{t});
    }
    std::sort(q.relations.begin(), q.relations.end());
    q.validate();
    return q;
}

AtomicType lift_exquisite(const AtomicType& q) {
    if (!check_exquisite(q))
        err::raise("precondition", "lift input must be exquisite");
    const int k = q.arity, l = q.tail_len;
    if (l <= 2 * k) err::raise("lift-verification", "tail too short to reorder");

    const OrbitTuple r = q.relations.front(); // lex-least
    // Reorder the tail: k+1 tail variables avoiding r come first.
    std::vector<int> avoid, rest;
    for (int v = k; v < k + l; ++v) {
        bool in_r = std::binary_search(r.entries.begin(), r.entries.end(), v);
        if (in_r || static_cast<int>(avoid.size()) >= k + 1)
            rest.push_back(v);
        else
            avoid.push_back(v);
    }
    std::vector<int> new_tail_pos(k + l, -1); // old var -> position 0..l-1
    {
        int pos = 0;
        for (int v : avoid) new_tail_pos[v] = pos++;
        for (int v : rest) new_tail_pos[v] = pos++;
    }

    // New variable indexing: heads 0..k (index k = the fresh head), then the
    // reordered b-part at k+1 .. k+l, then c_1..c_{k+1} at k+l+1 ...
    auto new_b = [&](int pos) { return k + 1 + pos; };
    auto new_c = [&](int i) { return k + l + 1 + (i - 1); }; // i in 1..k+1
    auto translate = [&](const OrbitTuple& s) {
        std::vector<int> t;
        for (int v : s.entries) t.push_back(v < k ? v : new_b(new_tail_pos[v]));
        return t;
    };

    AtomicType p;
    p.name = q.name + "+";
    p.arity = k + 1;
    p.tail_len = l + k + 1;
    for (const auto& s : q.relations) {
        if (s == r) continue;
        std::vector<int> t = translate(s);
        t.push_back(new_c(1));
        std::sort(t.begin(), t.end());
        p.relations.push_back(OrbitTuple{std::move(t)});
    }
    {
        std::vector<int> t = translate(r);
        t.push_back(new_c(2));
        std::sort(t.begin(), t.end());
        p.relations.push_back(OrbitTuple{std::move(t)});
    }
    // k+1 wrap-around orbits through the fresh head and b_i, with k-1
    // cyclically consecutive c's each.
    for (int i = 1; i <= k + 1; ++i) {
        std::vector<int> t{k, new_b(i - 1)};
        for (int step = 0; step < k - 1; ++step) t.push_back(new_c(((i - 1 + step) % (k + 1)) + 1));
        std::sort(t.begin(), t.end());
        p.relations.push_back(OrbitTuple{std::move(t)});
    }
    std::sort(p.relations.begin(), p.relations.end());
    p.validate();
    if (p.t_q() != q.t_q() + k + 1)
        err::raise("lift-verification", "lift produced a degenerate relation set");
    if (!check_exquisite(p))
        err::raise("lift-verification", "lifted type failed the exquisiteness recheck");
    return p;
}

const AtomicType& exquisite_for_arity(int n) {
    if (n < 3) err::raise("arity-bound", "exquisite types start at arity 3");
    static std::map<int, AtomicType> memo;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    AtomicType q = base_exquisite_3();
    q.name = "exq3";
    memo.emplace(3, q);
    for (int k = 4; k <= n; ++k) {
        q = lift_exquisite(q);
        q.name = "exq" + std::to_string(k);
        memo.emplace(k, q);
    }
    return memo.at(n);
}

namespace {

struct RealizationSearch {
    const FiniteStructure& m;
    const AtomicType& q;
    bool complete_type; // q itself vs the positive part q+

    std::vector<int> order;            // variable assignment order
    std::vector<int> q_degree;         // incident q-relations per variable
    std::vector<std::vector<int>> rels_of_var;
    // host orbit (as sorted entry set) minus one element -> completions
    std::unordered_map<std::string, std::vector<int>> completions;

    std::vector<int> assign;  // var -> host element or -1
    std::vector<bool> used;   // host element taken
    std::vector<TypedTuple> found;

    explicit RealizationSearch(const FiniteStructure& host, const AtomicType& type,
                               bool complete)
        : m(host), q(type), complete_type(complete) {
        int vc = q.var_count();
        q_degree.assign(vc, 0);
        rels_of_var.assign(vc, {});
        for (std::size_t r = 0; r < q.relations.size(); ++r) {
            for (int v : q.relations[r].entries) {
                ++q_degree[v];
                rels_of_var[v].push_back(static_cast<int>(r));
            }
        }
        order.resize(vc);
        for (int v = 0; v < vc; ++v) order[v] = v;
        std::stable_sort(order.begin(), order.end(),
                         [&](int x, int y) { return q_degree[x] > q_degree[y]; });
        for (const auto& rel : m.relations()) {
            for (std::size_t skip = 0; skip < rel.entries.size(); ++skip) {
                std::string key;
                for (std::size_t i = 0; i < rel.entries.size(); ++i)
                    if (i != skip) key += std::to_string(rel.entries[i]) + ",";
                completions[key].push_back(rel.entries[skip]);
            }
        }
        assign.assign(vc, -1);
        used.assign(m.size(), false);
    }

    bool rel_satisfied_if_complete(int rel_idx, int just_set) {
        const auto& entries = q.relations[rel_idx].entries;
        std::vector<int> sub;
        sub.reserve(entries.size());
        for (int v : entries) {
            if (assign[v] < 0) return true; // not yet fully assigned
            sub.push_back(assign[v]);
        }
        (void)just_set;
        std::sort(sub.begin(), sub.end());
        return m.has_orbit(OrbitTuple{std::move(sub)});
    }

    // Candidates for `v`: completions of an almost-assigned incident
    // relation when one exists, otherwise all unused elements of adequate
    // degree.
    std::vector<int> candidates(int v) {
        for (int r : rels_of_var[v]) {
            int unassigned = 0;
            for (int u : q.relations[r].entries)
                if (assign[u] < 0) ++unassigned;
            if (unassigned != 1) continue;
            std::vector<int> part;
            for (int u : q.relations[r].entries)
                if (assign[u] >= 0) part.push_back(assign[u]);
            std::sort(part.begin(), part.end());
            std::string key;
            for (int e : part) key += std::to_string(e) + ",";
            // completions were keyed by sorted-orbit-minus-one in orbit
            // order; the part is sorted, matching the key construction only
            // when the skipped element keeps the rest sorted -- orbit
            // entries are sorted, so removing any one preserves order.
            auto it = completions.find(key);
            std::vector<int> out;
            if (it != completions.end()) {
                for (int e : it->second)
                    if (!used[e] && m.degrees()[e] >= q_degree[v]) out.push_back(e);
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
        }
        std::vector<int> out;
        for (int e = 0; e < m.size(); ++e)
            if (!used[e] && m.degrees()[e] >= q_degree[v]) out.push_back(e);
        return out;
    }

    void dfs(std::size_t pos) {
        if (pos == order.size()) {
            TypedTuple t;
            for (int v = 0; v < q.arity; ++v) t.head.push_back(assign[v]);
            for (int v = q.arity; v < q.var_count(); ++v) t.tail.push_back(assign[v]);
            if (complete_type && m.relations_inside(t.mask()) != q.t_q()) return;
            found.push_back(std::move(t));
            return;
        }
        int v = order[pos];
        for (int e : candidates(v)) {
            assign[v] = e;
            used[e] = true;
            bool ok = true;
            for (int r : rels_of_var[v])
                if (!rel_satisfied_if_complete(r, v)) {
                    ok = false;
                    break;
                }
            if (ok) dfs(pos + 1);
            assign[v] = -1;
            used[e] = false;
        }
    }

    std::vector<TypedTuple> run() {
        dfs(0);
        std::sort(found.begin(), found.end());
        return found;
    }
};

void require_sym_host(const FiniteStructure& m, const AtomicType& q) {
    if (m.arity() != q.arity || !m.group().is_full())
        err::raise("arity-mismatch", "host must carry the full symmetric group of the type's arity");
}

} // namespace

std::vector<TypedTuple> positive_realizations(const FiniteStructure& m, const AtomicType& q) {
    require_sym_host(m, q);
    return RealizationSearch(m, q, false).run();
}

std::vector<TypedTuple> realizations(const FiniteStructure& m, const AtomicType& q) {
    require_sym_host(m, q);
    auto complete = RealizationSearch(m, q, true).run();
    auto plus = positive_realizations(m, q);
    std::vector<Bits> plus_masks;
    plus_masks.reserve(plus.size());
    for (const auto& t : plus) plus_masks.push_back(t.mask());

    std::vector<TypedTuple> out;
    for (const auto& t : complete) {
        Bits tm = t.mask();
        bool guarded = true;
        for (std::size_t i = 0; i < plus.size() && guarded; ++i) {
            if (plus[i] == t) continue;
            if ((tm & plus_masks[i]).count() > q.arity) guarded = false;
        }
        if (guarded) out.push_back(t);
    }
    return out;
}

namespace {

bool sorted_intersects(const std::vector<OrbitTuple>& a, const std::vector<OrbitTuple>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return true;
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    return false;
}

} // namespace

CollisionReport collisions(const FiniteStructure& m, const AtomicType& q) {
    CollisionReport rep;
    auto hat = realizations(m, q);
    std::vector<std::vector<OrbitTuple>> hat_gen;
    for (const auto& t : hat) hat_gen.push_back(generated_set(q, t));
    for (std::size_t i = 0; i < hat.size(); ++i) {
        for (std::size_t j = i + 1; j < hat.size(); ++j) {
            if (sorted_intersects(hat_gen[i], hat_gen[j])) {
                ++rep.c;
                rep.witnesses.emplace_back(hat[i], hat[j]);
            }
        }
    }
    auto plus = positive_realizations(m, q);
    std::vector<std::vector<OrbitTuple>> plus_gen;
    for (const auto& t : plus) plus_gen.push_back(generated_set(q, t));
    for (std::size_t i = 0; i < plus.size(); ++i)
        for (std::size_t j = i + 1; j < plus.size(); ++j)
            if (sorted_intersects(plus_gen[i], plus_gen[j])) ++rep.w;
    return rep;
}

AdjacencyVerdict is_adjacency_loop(const FiniteStructure& m, const AtomicType& q,
                                   const std::vector<OrbitTuple>& r,
                                   const std::vector<TypedTuple>& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] == seq[j]) err::raise("precondition", "sequence tuples must be distinct");
    auto hat = realizations(m, q);
    for (const auto& t : seq)
        if (!std::binary_search(hat.begin(), hat.end(), t))
            err::raise("precondition", "sequence tuple does not satisfy the guarded type");

    AdjacencyVerdict v{true, false, false};
    if (seq.empty()) return v;

    std::vector<OrbitTuple> base = r;
    std::sort(base.begin(), base.end());
    std::vector<std::vector<OrbitTuple>> gen;
    for (const auto& t : seq) gen.push_back(generated_set(q, t));

    v.chain = sorted_intersects(gen[0], base);
    for (std::size_t i = 0; i + 1 < gen.size() && v.chain; ++i)
        if (!sorted_intersects(gen[i], gen[i + 1])) v.chain = false;
    if (!v.chain) return v;

    std::size_t k = seq.size();
    if (k == 1) {
        int meet = 0;
        for (const auto& o : gen[0])
            if (std::binary_search(base.begin(), base.end(), o)) ++meet;
        v.loop = meet >= 2;
    } else {
        std::vector<OrbitTuple> inter;
        for (const auto& o : gen[k - 2])
            if (std::binary_search(gen[k - 1].begin(), gen[k - 1].end(), o)) inter.push_back(o);
        if (inter.size() == 1) {
            std::vector<OrbitTuple> pool = base;
            for (std::size_t i = 0; i + 2 < k; ++i)
                pool.insert(pool.end(), gen[i].begin(), gen[i].end());
            std::sort(pool.begin(), pool.end());
            pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
            pool.erase(std::remove(pool.begin(), pool.end(), inter[0]), pool.end());
            v.loop = sorted_intersects(gen[k - 1], pool);
        }
    }
    if (v.loop) {
        bool contained = true;
        for (const auto& o : gen[k - 1])
            if (!std::binary_search(base.begin(), base.end(), o)) contained = false;
        v.proper = !contained;
    }
    return v;
}

std::vector<std::pair<OrbitTuple, TypedTuple>> find_unique_orbits(const FiniteStructure& m,
                                                                  const AtomicType& q) {
    auto hat = realizations(m, q);
    std::vector<std::vector<OrbitTuple>> gen;
    for (const auto& t : hat) gen.push_back(generated_set(q, t));

    std::vector<bool> in_collision(hat.size(), false);
    for (std::size_t i = 0; i < hat.size(); ++i)
        for (std::size_t j = i + 1; j < hat.size(); ++j)
            if (sorted_intersects(gen[i], gen[j])) in_collision[i] = in_collision[j] = true;

    std::vector<std::pair<OrbitTuple, TypedTuple>> out;
    for (const auto& orbit : m.relations()) {
        int cover = -1;
        bool unique = true;
        for (std::size_t i = 0; i < hat.size() && unique; ++i) {
            if (std::binary_search(gen[i].begin(), gen[i].end(), orbit)) {
                if (cover >= 0)
                    unique = false;
                else
                    cover = static_cast<int>(i);
            }
        }
        if (unique && cover >= 0 && in_collision[cover]) out.emplace_back(orbit, hat[cover]);
    }
    return out;
}

FiniteStructure decollide_step(const FiniteStructure& a, const AtomicType& q) {
    require_sym_host(a, q);
    if (!in_class(a)) err::raise("not-in-class", "decollide input must be in the class");
    auto uniques = find_unique_orbits(a, q);
    if (uniques.empty()) err::raise("no-collision", "no collision to eliminate");

    const auto& [orbit, tuple] = uniques.front(); // lex-least orbit
    std::vector<std::string> elems = a.elements();
    std::vector<std::string> taken = elems;
    std::vector<std::string> fresh;
    for (int j = 1; j <= q.tail_len; ++j) {
        std::string w = fresh_name("w" + std::to_string(j), taken);
        taken.push_back(w);
        fresh.push_back(w);
        elems.push_back(w);
    }

    std::vector<std::vector<std::string>> rels;
    for (const auto& r : a.relations()) {
        if (r == orbit) continue;
        std::vector<std::string> t;
        for (int e : r.entries) t.push_back(a.element(e));
        rels.push_back(std::move(t));
    }
    // G(head; fresh tail): substitute variable indices directly
    std::vector<std::string> sub(q.var_count());
    for (int v = 0; v < q.arity; ++v) sub[v] = a.element(tuple.head[v]);
    for (int v = 0; v < q.tail_len; ++v) sub[q.arity + v] = fresh[v];
    for (const auto& r : q.relations) {
        std::vector<std::string> t;
        for (int v : r.entries) t.push_back(sub[v]);
        rels.push_back(std::move(t));
    }
    FiniteStructure b(a.name() + "'", a.group(), std::move(elems), rels);
    if (!in_class(b)) err::raise("not-in-class", "decollide step left the class");
    return b;
}

FiniteStructure decollide(const FiniteStructure& a, const AtomicType& q) {
    require_sym_host(a, q);
    if (!in_class(a)) err::raise("not-in-class", "decollide input must be in the class");
    FiniteStructure cur = a;
    long long guard = collisions(cur, q).w + 1;
    while (collisions(cur, q).c > 0) {
        if (--guard < 0) err::raise("internal", "decollide failed to terminate");
        cur = decollide_step(cur, q);
    }
    return cur;
}

} // namespace fh
