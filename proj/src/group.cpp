#include "fh/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fh/error.hpp"

namespace fh {

Permutation::Permutation(std::vector<std::uint8_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (auto v : img_) {
        if (v >= img_.size() || seen[v])
            err::raise("perm", "image sequence is not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<std::uint8_t> img(n);
    std::iota(img.begin(), img.end(), 0);
    return Permutation(img);
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
    std::vector<std::uint8_t> img;
    img.reserve(images.size());
    for (int v : images) {
        if (v < 1 || v > static_cast<int>(images.size()))
            err::raise("perm", "generator entry out of range");
        img.push_back(static_cast<std::uint8_t>(v - 1));
    }
    return Permutation(img);
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != i) return false;
    return true;
}

Permutation Permutation::compose(const Permutation& other) const {
    // (this ∘ other)(i) = this(other(i)); applying the result to a tuple
    // equals applying `this` first and `other` to the outcome.
    std::vector<std::uint8_t> img(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) img[i] = img_[other.img_[i]];
    return Permutation(img);
}

Permutation Permutation::inverse() const {
    std::vector<std::uint8_t> img(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) img[img_[i]] = static_cast<std::uint8_t>(i);
    return Permutation(img);
}

std::vector<int> Permutation::one_based() const {
    std::vector<int> out;
    out.reserve(img_.size());
    for (auto v : img_) out.push_back(v + 1);
    return out;
}

namespace {

void check_arity(int arity) {
    if (arity < 1 || arity > SymmetryGroup::kMaxArity)
        err::raise("arity-bound", "arity must be in 1.." + std::to_string(SymmetryGroup::kMaxArity));
}

} // namespace

SymmetryGroup SymmetryGroup::trivial(int arity) {
    check_arity(arity);
    SymmetryGroup g;
    g.arity_ = arity;
    g.members_ = {Permutation::identity(arity)};
    return g;
}

SymmetryGroup SymmetryGroup::full(int arity) {
    check_arity(arity);
    std::vector<std::uint8_t> img(arity);
    std::iota(img.begin(), img.end(), 0);
    SymmetryGroup g;
    g.arity_ = arity;
    do {
        g.members_.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    std::sort(g.members_.begin(), g.members_.end());
    return g;
}

SymmetryGroup SymmetryGroup::generated(int arity, const std::vector<Permutation>& gens) {
    check_arity(arity);
    for (const auto& p : gens)
        if (p.degree() != arity) err::raise("arity-mismatch", "generator degree differs from arity");

    std::set<Permutation> closed;
    closed.insert(Permutation::identity(arity));
    std::vector<Permutation> frontier(closed.begin(), closed.end());
    std::size_t limit = 1;
    for (int i = 2; i <= arity; ++i) limit *= i;
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& p : frontier) {
            for (const auto& g : gens) {
                for (const Permutation& q : {p.compose(g), p.compose(g.inverse())}) {
                    if (closed.insert(q).second) next.push_back(q);
                }
            }
        }
        if (closed.size() > limit)
            err::raise("group-closure", "group closure exceeds n!");
        frontier = std::move(next);
    }
    SymmetryGroup g;
    g.arity_ = arity;
    g.members_.assign(closed.begin(), closed.end());
    return g;
}

bool SymmetryGroup::is_full() const {
    std::size_t fact = 1;
    for (int i = 2; i <= arity_; ++i) fact *= i;
    return members_.size() == fact;
}

bool SymmetryGroup::contains(const Permutation& p) const {
    return std::binary_search(members_.begin(), members_.end(), p);
}

bool SymmetryGroup::is_subgroup_of(const SymmetryGroup& other) const {
    if (arity_ != other.arity_) return false;
    return std::includes(other.members_.begin(), other.members_.end(),
                         members_.begin(), members_.end());
}

std::vector<int> SymmetryGroup::canonicalize(const std::vector<int>& tuple) const {
    std::vector<int> best = tuple;
    for (const auto& p : members_) {
        std::vector<int> cand = p.apply(tuple);
        if (cand < best) best = std::move(cand);
    }
    return best;
}

} // namespace fh
