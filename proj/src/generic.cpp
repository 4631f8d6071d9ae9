#include "fh/generic.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fh/amalgam.hpp"
#include "fh/config.hpp"
#include "fh/error.hpp"
#include "fh/predim.hpp"
#include "fh/rng.hpp"

namespace fh {

std::vector<CatalogEntry> build_catalog(const SymmetryGroup& group, int size_bound) {
    if (size_bound < group.arity())
        err::raise("usage", "size bound below the arity admits no relations");
    std::vector<CatalogEntry> entries;
    std::set<std::string> seen;
    for (int m = 0; m <= size_bound; ++m) {
        std::vector<std::string> elems;
        for (int i = 1; i <= m; ++i) elems.push_back("u" + std::to_string(i));
        auto orbits = all_possible_orbits(group, m);
        if (orbits.size() > 20)
            err::raise("catalog-bound",
                       "orbit pool too large for catalog enumeration (" +
                           std::to_string(orbits.size()) + " orbits on " + std::to_string(m) +
                           " points)");
        std::uint32_t total = 1u << orbits.size();
        for (std::uint32_t rel_mask = 0; rel_mask < total; ++rel_mask) {
            std::vector<std::vector<int>> rels;
            for (std::size_t i = 0; i < orbits.size(); ++i)
                if (rel_mask >> i & 1) rels.push_back(orbits[i].entries);
            FiniteStructure b = FiniteStructure::from_indices(
                "t" + std::to_string(m) + "_" + std::to_string(rel_mask), group, elems, rels);
            if (!in_class(b)) continue;
            for (std::uint32_t am = 0; am < (1u << m); ++am) {
                Bits a_mask = Bits::from_low32(am);
                if (!is_self_sufficient(b, a_mask)) continue;
                std::string key = b.canonical_encoding_with(a_mask);
                if (!seen.insert(key).second) continue;
                entries.push_back(CatalogEntry{b, a_mask});
            }
        }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const CatalogEntry& x, const CatalogEntry& y) {
        auto kx = std::tuple(x.b.size(), x.b.relation_count(), x.base_size());
        auto ky = std::tuple(y.b.size(), y.b.relation_count(), y.base_size());
        if (kx != ky) return kx < ky;
        return x.b.canonical_encoding_with(x.a_mask) < y.b.canonical_encoding_with(y.a_mask);
    });
    return entries;
}

namespace {

long long choose(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > (1LL << 40)) return c;
    }
    return c;
}

bool base_matches(const FiniteStructure& m, const Bits& s, const FiniteStructure& base) {
    if (m.relations_inside(s) != base.relation_count()) return false;
    return find_isomorphism_extending(base, m.induced(s), {}).has_value();
}

// Seeded choice of a self-sufficient subset of M isomorphic to `base`.
std::optional<std::vector<std::string>> pick_base_image(const FiniteStructure& m,
                                                        const FiniteStructure& base,
                                                        SplitMix64& rng) {
    int k = base.size();
    if (k == 0) return std::vector<std::string>{};
    if (k > m.size()) return std::nullopt;
    if (choose(m.size(), k) <= 20000) {
        std::vector<Bits> cands;
        std::vector<int> comb(k);
        auto rec = [&](auto&& self, int pos, int lo) -> void {
            if (pos == k) {
                Bits s = Bits::of(comb);
                if (base_matches(m, s, base) && is_self_sufficient(m, s)) cands.push_back(s);
                return;
            }
            for (int e = lo; e < m.size(); ++e) {
                comb[pos] = e;
                self(self, pos + 1, e + 1);
            }
        };
        rec(rec, 0, 0);
        if (cands.empty()) return std::nullopt;
        return m.names_of(cands[rng.below(cands.size())]);
    }
    for (int attempt = 0; attempt < 300; ++attempt) {
        std::set<int> pick;
        while (static_cast<int>(pick.size()) < k)
            pick.insert(static_cast<int>(rng.below(m.size())));
        Bits s = Bits::of(std::vector<int>(pick.begin(), pick.end()));
        if (base_matches(m, s, base) && is_self_sufficient(m, s)) return m.names_of(s);
    }
    return std::nullopt;
}

std::string padded(int n) {
    std::string s = std::to_string(n);
    while (s.size() < 4) s = "0" + s;
    return s;
}

} // namespace

GenericBuildState build_generic(const SymmetryGroup& group, int size_bound, int steps,
                                std::uint64_t seed) {
    GenericBuildState state;
    state.group = group;
    state.size_bound = size_bound;
    state.seed = seed;
    state.catalog = build_catalog(group, size_bound);
    state.chain.push_back(FiniteStructure("m0", group, {}, {}));

    SplitMix64 rng(seed);
    int fresh_counter = 1;
    for (int step = 0; step < steps; ++step) {
        const FiniteStructure& m = state.chain.back();
        int ci = step % static_cast<int>(state.catalog.size());
        const CatalogEntry& entry = state.catalog[ci];
        FiniteStructure base = entry.base();

        auto image = pick_base_image(m, base, rng);
        if (!image) {
            state.log.push_back(BuildStep{step, ci, {}, {}, false});
            continue;
        }
        // identify the template base with its image
        std::map<std::string, std::string> ren;
        if (!image->empty()) {
            auto iso = find_isomorphism_extending(base, m.induced(m.mask_of(*image)), {});
            ren = iso->map;
        }
        std::vector<std::string> fresh;
        for (const auto& e : entry.b.elements()) {
            if (ren.count(e)) continue;
            std::string f = "e" + padded(fresh_counter++);
            ren[e] = f;
            fresh.push_back(f);
        }
        FiniteStructure part = entry.b.renamed(ren, "step" + std::to_string(step));
        FiniteStructure next =
            simple_amalgam(m, part, *image).with_name("m" + std::to_string(step + 1));
        state.chain.push_back(next);
        state.log.push_back(BuildStep{step, ci, *image, fresh, true});
    }

    // chain sanity: links strong, final structure in the class
    for (std::size_t i = 0; i + 1 < state.chain.size(); ++i) {
        const auto& lo = state.chain[i];
        const auto& hi = state.chain[i + 1];
        if (!is_self_sufficient(hi, hi.mask_of(lo.elements())))
            err::raise("internal", "chain link lost self-sufficiency");
    }
    if (!in_class(state.result())) err::raise("internal", "build left the class");
    return state;
}

namespace {

// Induced-embedding backtracking: injective g on the pattern with the host
// inducing exactly the pattern's relations on the image, extending a fixed
// partial assignment, with the image required self-sufficient in the host.
struct EmbedSearch {
    const FiniteStructure& host;
    const FiniteStructure& pat;

    std::vector<int> assign; // pattern idx -> host idx
    std::vector<bool> used;
    std::vector<std::vector<int>> pat_rels_of_var;
    std::vector<std::vector<int>> host_rels_of_elem;
    std::vector<int> order; // unassigned pattern vars
    std::vector<int> clone_prev; // previous degree-0 clone, for ordering
    std::unordered_map<std::string, std::vector<int>> completions;
    bool require_strong;
    std::optional<std::vector<int>> result;

    EmbedSearch(const FiniteStructure& h, const FiniteStructure& p,
                const std::map<std::string, std::string>& pre, bool strong)
        : host(h), pat(p), require_strong(strong) {
        assign.assign(pat.size(), -1);
        used.assign(host.size(), false);
        for (const auto& [from, to] : pre) {
            assign[pat.index_of(from)] = host.index_of(to);
            used[host.index_of(to)] = true;
        }
        pat_rels_of_var.assign(pat.size(), {});
        for (std::size_t r = 0; r < pat.relations().size(); ++r)
            for (int v : pat.relations()[r].entries)
                pat_rels_of_var[v].push_back(static_cast<int>(r));
        host_rels_of_elem.assign(host.size(), {});
        for (std::size_t r = 0; r < host.relations().size(); ++r)
            for (int e : host.relations()[r].entries)
                host_rels_of_elem[e].push_back(static_cast<int>(r));
        // support index: sorted (n-1)-subsets of orbit supports map to the
        // completing element; placement_ok validates the actual orbit, so
        // entry order inside the orbit does not matter here
        for (const auto& rel : host.relations()) {
            std::vector<int> support = rel.entries;
            std::sort(support.begin(), support.end());
            for (std::size_t skip = 0; skip < support.size(); ++skip) {
                std::string key;
                for (std::size_t i = 0; i < support.size(); ++i)
                    if (i != skip) key += std::to_string(support[i]) + ",";
                completions[key].push_back(support[skip]);
            }
        }
        for (int v = 0; v < pat.size(); ++v)
            if (assign[v] < 0) order.push_back(v);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            return pat.degrees()[x] > pat.degrees()[y];
        });
        // degree-0 vars are interchangeable: force ascending host indices
        clone_prev.assign(pat.size(), -1);
        int prev = -1;
        for (int v : order) {
            if (pat.degrees()[v] == 0) {
                clone_prev[v] = prev;
                prev = v;
            }
        }
    }

    Bits image_mask() const {
        Bits m;
        for (int v = 0; v < pat.size(); ++v)
            if (assign[v] >= 0) m.set(assign[v]);
        return m;
    }

    bool placement_ok(int v, int e) {
        // pattern relations through v that are fully assigned must be host
        // orbits; entry order is kept, canonicalize normalizes the orbit
        for (int r : pat_rels_of_var[v]) {
            std::vector<int> sub;
            bool full = true;
            for (int u : pat.relations()[r].entries) {
                if (assign[u] < 0) {
                    full = false;
                    break;
                }
                sub.push_back(assign[u]);
            }
            if (!full) continue;
            if (!host.has_orbit(OrbitTuple{host.group().canonicalize(sub)})) return false;
        }
        // host orbits through e inside the current image must be pattern images
        Bits img = image_mask();
        std::vector<int> var_of(host.size(), -1);
        for (int u = 0; u < pat.size(); ++u)
            if (assign[u] >= 0) var_of[assign[u]] = u;
        for (int r : host_rels_of_elem[e]) {
            if (!host.relation_masks()[r].subset_of(img)) continue;
            std::vector<int> vars;
            for (int he : host.relations()[r].entries) vars.push_back(var_of[he]);
            if (!pat.has_orbit(OrbitTuple{pat.group().canonicalize(vars)})) return false;
        }
        return true;
    }

    std::vector<int> candidates(int v) {
        for (int r : pat_rels_of_var[v]) {
            int unassigned = 0;
            for (int u : pat.relations()[r].entries)
                if (assign[u] < 0) ++unassigned;
            if (unassigned != 1) continue;
            std::vector<int> part;
            for (int u : pat.relations()[r].entries)
                if (assign[u] >= 0) part.push_back(assign[u]);
            std::sort(part.begin(), part.end());
            std::string key;
            for (int e : part) key += std::to_string(e) + ",";
            std::vector<int> out;
            auto it = completions.find(key);
            if (it != completions.end())
                for (int e : it->second)
                    if (!used[e] && host.degrees()[e] >= pat.degrees()[v]) out.push_back(e);
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
        }
        std::vector<int> out;
        int lo = clone_prev[v] >= 0 && assign[clone_prev[v]] >= 0 ? assign[clone_prev[v]] + 1 : 0;
        for (int e = lo; e < host.size(); ++e)
            if (!used[e] && host.degrees()[e] >= pat.degrees()[v]) out.push_back(e);
        return out;
    }

    bool dfs(std::size_t pos) {
        if (pos == order.size()) {
            Bits img = image_mask();
            if (host.relations_inside(img) != pat.relation_count()) return false;
            if (require_strong && !is_self_sufficient(host, img)) return false;
            result = assign;
            return true;
        }
        int v = order[pos];
        for (int e : candidates(v)) {
            assign[v] = e;
            used[e] = true;
            if (placement_ok(v, e) && dfs(pos + 1)) return true;
            assign[v] = -1;
            used[e] = false;
        }
        return false;
    }
};

} // namespace

std::optional<Embedding> extension_property_test(const FiniteStructure& m, const Bits& a,
                                                 const FiniteStructure& c) {
    if (!is_self_sufficient(m, a))
        err::raise("not-strong-base", "the base is not self-sufficient in the host");
    auto a_names = m.names_of(a);
    for (const auto& n : a_names)
        if (!c.has_element(n))
            err::raise("precondition", "extension must contain the base by name");
    if (!c.induced(c.mask_of(a_names)).equal(m.induced(a)))
        err::raise("precondition", "extension disagrees with the host on the base");
    if (!(c.group() == m.group())) err::raise("arity-mismatch", "group mismatch");

    std::map<std::string, std::string> pre;
    for (const auto& n : a_names) pre[n] = n;
    EmbedSearch search(m, c, pre, /*strong=*/true);
    if (!search.dfs(0)) return std::nullopt;
    Embedding emb;
    for (int v = 0; v < c.size(); ++v) emb.map[c.element(v)] = m.element((*search.result)[v]);
    return emb;
}

std::string AuditReport::to_text() const {
    std::ostringstream os;
    long long ok = 0;
    for (const auto& r : rows) ok += r.realized;
    os << "audit pairs=" << rows.size() << " realized=" << ok << "\n";
    for (const auto& r : rows) {
        os << "base={";
        for (std::size_t i = 0; i < r.base_elements.size(); ++i)
            os << (i ? "," : "") << r.base_elements[i];
        os << "} template=" << r.catalog_index << ' '
           << (r.realized ? "realized" : "unrealized") << "\n";
    }
    return os.str();
}

AuditReport audit_genericity(const FiniteStructure& m, const std::vector<CatalogEntry>& catalog,
                             int max_base, int max_ext) {
    // strong subsets of size <= max_base, in mask order
    std::vector<Bits> strong;
    std::vector<int> comb;
    auto rec = [&](auto&& self, int lo, int left) -> void {
        Bits s = Bits::of(comb);
        if (is_self_sufficient(m, s)) strong.push_back(s);
        if (left == 0) return;
        for (int e = lo; e < m.size(); ++e) {
            comb.push_back(e);
            self(self, e + 1, left - 1);
            comb.pop_back();
        }
    };
    rec(rec, 0, max_base);

    struct Job {
        Bits a;
        int ci;
    };
    std::vector<Job> jobs;
    for (const auto& a : strong) {
        FiniteStructure ind = m.induced(a);
        for (std::size_t ci = 0; ci < catalog.size(); ++ci) {
            const auto& e = catalog[ci];
            if (e.b.size() > max_ext) continue;
            if (e.base_size() != a.count()) continue;
            if (!find_isomorphism_extending(e.base(), ind, {})) continue;
            jobs.push_back(Job{a, static_cast<int>(ci)});
        }
    }

    AuditReport report;
    report.rows.resize(jobs.size());
#ifdef _OPENMP
    int nthreads = config().jobs > 0 ? config().jobs : omp_get_max_threads();
#pragma omp parallel for num_threads(nthreads) schedule(dynamic)
#endif
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(jobs.size()); ++j) {
        const Job& job = jobs[j];
        const CatalogEntry& entry = catalog[job.ci];
        auto a_names = m.names_of(job.a);
        // rename the template so its base carries the image's names
        auto iso = find_isomorphism_extending(entry.base(), m.induced(job.a), {});
        std::map<std::string, std::string> ren = iso->map;
        std::vector<std::string> taken = m.elements();
        for (const auto& e : entry.b.elements()) {
            if (ren.count(e)) continue;
            std::string f = fresh_name("x_" + e, taken);
            taken.push_back(f);
            ren[e] = f;
        }
        FiniteStructure c = entry.b.renamed(ren, "ext");
        bool realized = extension_property_test(m, job.a, c).has_value();
        report.rows[j] = AuditRow{a_names, job.ci, realized};
    }
    return report;
}

} // namespace fh
