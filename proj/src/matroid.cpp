#include "fh/matroid.hpp"

#include <algorithm>
#include <map>

#include "fh/error.hpp"

namespace fh {

Matroid::Matroid(FiniteStructure source) : source_(std::move(source)) {}

int Matroid::rank(const Bits& y) const {
    auto key = y.hash();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    int r = dim(source_, y);
    memo_.emplace(key, r);
    return r;
}

Bits Matroid::closure(const Bits& y) const {
    int base = rank(y);
    Bits out = y;
    for (int i = 0; i < ground_size(); ++i) {
        if (y.test(i)) continue;
        Bits with = y;
        with.set(i);
        if (rank(with) == base) out.set(i);
    }
    return out;
}

std::vector<Bits> Matroid::independent_sets(int k) const {
    if (k > ground_size()) err::raise("search-bound", "k exceeds ground size");
    std::vector<Bits> out{Bits::none()};
    std::vector<Bits> frontier{Bits::none()};
    for (int sz = 1; sz <= k; ++sz) {
        std::vector<Bits> next;
        for (const auto& y : frontier) {
            // extend by elements above the current maximum to avoid repeats
            auto idx = y.to_indices();
            int lo = idx.empty() ? 0 : idx.back() + 1;
            for (int i = lo; i < ground_size(); ++i) {
                Bits cand = y;
                cand.set(i);
                if (rank(cand) == sz) next.push_back(cand);
            }
        }
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

GeometryQuotient associated_geometry(const Matroid& m) {
    GeometryQuotient g;
    g.rank_zero = m.closure(Bits::none());
    std::vector<bool> assigned(m.ground_size(), false);
    for (int i : g.rank_zero.to_indices()) assigned[i] = true;
    for (int i = 0; i < m.ground_size(); ++i) {
        if (assigned[i]) continue;
        Bits cls = m.closure(Bits::single(i)) - g.rank_zero;
        for (int j : cls.to_indices()) assigned[j] = true;
        g.classes.push_back(cls);
    }
    return g;
}

int GeometryQuotient::class_rank(const Matroid& m, const std::vector<int>& class_indices) const {
    Bits u;
    for (int c : class_indices) u |= classes[c];
    return m.rank(u);
}

namespace {

// rank profile signatures: singleton rank, sorted ranks of pairs through it
std::vector<std::pair<int, std::vector<int>>> signatures(const Matroid& m) {
    int n = m.ground_size();
    std::vector<std::pair<int, std::vector<int>>> sig(n);
    for (int i = 0; i < n; ++i) {
        sig[i].first = m.rank(Bits::single(i));
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            Bits p = Bits::single(i);
            p.set(j);
            sig[i].second.push_back(m.rank(p));
        }
        std::sort(sig[i].second.begin(), sig[i].second.end());
    }
    return sig;
}

bool extend_rank_iso(const Matroid& m1, const Matroid& m2,
                     const std::vector<std::pair<int, std::vector<int>>>& sig1,
                     const std::vector<std::pair<int, std::vector<int>>>& sig2,
                     std::vector<int>& map, std::vector<bool>& used, int i) {
    int n = m1.ground_size();
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
        if (used[j] || sig1[i] != sig2[j]) continue;
        map[i] = j;
        used[j] = true;
        // every subset of the assigned prefix must match ranks
        bool ok = true;
        std::uint32_t limit = 1u << (i + 1);
        for (std::uint32_t s = 0; s < limit && ok; ++s) {
            if (!(s >> i & 1)) continue; // only subsets involving the new point
            Bits y1, y2;
            for (int k = 0; k <= i; ++k) {
                if (s >> k & 1) {
                    y1.set(k);
                    y2.set(map[k]);
                }
            }
            if (m1.rank(y1) != m2.rank(y2)) ok = false;
        }
        if (ok && extend_rank_iso(m1, m2, sig1, sig2, map, used, i + 1)) return true;
        map[i] = -1;
        used[j] = false;
    }
    return false;
}

} // namespace

std::optional<Embedding> pregeometry_isomorphic(const Matroid& m1, const Matroid& m2) {
    if (m1.ground_size() != m2.ground_size()) return std::nullopt;
    if (m1.ground_size() > 10)
        err::raise("search-bound", "pregeometry isomorphism search capped at 10 points");
    auto sig1 = signatures(m1), sig2 = signatures(m2);
    {
        auto s1 = sig1, s2 = sig2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return std::nullopt;
    }
    std::vector<int> map(m1.ground_size(), -1);
    std::vector<bool> used(m2.ground_size(), false);
    if (!extend_rank_iso(m1, m2, sig1, sig2, map, used, 0)) return std::nullopt;
    Embedding emb;
    for (int i = 0; i < m1.ground_size(); ++i)
        emb.map[m1.source().element(i)] = m2.source().element(map[i]);
    return emb;
}

} // namespace fh
