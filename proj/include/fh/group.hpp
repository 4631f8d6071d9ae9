#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace fh {

// A permutation of {0..n-1}, stored as the image sequence. Acting on an
// n-tuple t yields s with s[i] = t[img[i]].
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::uint8_t> images);

    static Permutation identity(int n);
    // 1-based image list as written in .fhs files ("group gen 2 1 3").
    static Permutation from_one_based(const std::vector<int>& images);

    int degree() const { return static_cast<int>(img_.size()); }
    int image(int i) const { return img_[i]; }
    bool is_identity() const;

    Permutation compose(const Permutation& other) const; // this after other
    Permutation inverse() const;

    template <typename T>
    std::vector<T> apply(const std::vector<T>& tuple) const {
        std::vector<T> out(tuple.size());
        for (std::size_t i = 0; i < img_.size(); ++i) out[i] = tuple[img_[i]];
        return out;
    }

    std::vector<int> one_based() const;

    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<std::uint8_t> img_;
};

// A subgroup of S_n, n <= 8, stored fully closed and sorted. Closure keeps
// orbit canonicalization a plain scan over members.
class SymmetryGroup {
public:
    static constexpr int kMaxArity = 8;

    SymmetryGroup() = default;

    static SymmetryGroup trivial(int arity);
    static SymmetryGroup full(int arity);
    static SymmetryGroup generated(int arity, const std::vector<Permutation>& gens);

    int arity() const { return arity_; }
    std::size_t order() const { return members_.size(); }
    const std::vector<Permutation>& members() const { return members_; }

    bool is_trivial() const { return members_.size() == 1; }
    bool is_full() const;
    bool contains(const Permutation& p) const;
    bool is_subgroup_of(const SymmetryGroup& other) const;

    // Lexicographically least tuple in the orbit {p.apply(t) : p in members}.
    std::vector<int> canonicalize(const std::vector<int>& tuple) const;

    bool operator==(const SymmetryGroup& o) const {
        return arity_ == o.arity_ && members_ == o.members_;
    }

private:
    int arity_ = 0;
    std::vector<Permutation> members_;
};

} // namespace fh
