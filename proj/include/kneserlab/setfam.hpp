#pragma once

// r-subsets of [n] as 64-bit masks and uniform families of them.
//
// Element i of [n] is bit i-1. For sets of equal size, colex order coincides
// with numeric order of the masks, so sorting masks sorts by colex rank.

#include <bit>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kneserlab {

inline constexpr int kMaxGround = 62;

struct RSet {
  std::uint64_t mask = 0;

  static RSet of(std::initializer_list<int> elements);
  static RSet of(std::span<const int> elements);

  int size() const noexcept { return std::popcount(mask); }
  bool contains(int x) const noexcept { return (mask >> (x - 1)) & 1U; }
  /// Ascending 1-based elements.
  std::vector<int> elements() const;

  friend bool operator==(RSet, RSet) = default;
  friend auto operator<=>(RSet a, RSet b) { return a.mask <=> b.mask; }
};

/// C(n, k) for n <= 64 from a precomputed table; 0 outside 0 <= k <= n.
std::uint64_t small_binom(int n, int k) noexcept;

/// Colex rank: sum over the i-th smallest element e_i (1-based i) of C(e_i - 1, i).
std::uint64_t rank(RSet s) noexcept;
RSet unrank(std::uint64_t index, int n, int r);

/// Mask of the ground set [n].
constexpr std::uint64_t ground_mask(int n) noexcept {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

/// Calls f(mask) for every k-subset of `mask`, in increasing numeric order.
template <class F>
void for_each_subset_of_size(std::uint64_t mask, int k, F&& f) {
  const int m = std::popcount(mask);
  if (k < 0 || k > m) return;
  std::uint64_t bits[64];
  int count = 0;
  for (std::uint64_t w = mask; w; w &= w - 1) bits[count++] = w & (~w + 1);
  // Gosper's hack over positions 0..m-1, then scatter into the mask's bits.
  if (k == 0) {
    f(std::uint64_t{0});
    return;
  }
  std::uint64_t comb = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << m;
  while (comb < limit) {
    std::uint64_t out = 0;
    for (std::uint64_t c = comb; c; c &= c - 1) out |= bits[std::countr_zero(c)];
    f(out);
    const std::uint64_t low = comb & (~comb + 1);
    const std::uint64_t ripple = comb + low;
    comb = (((ripple ^ comb) >> 2) / low) | ripple;
  }
}

/// Immutable uniform family on [n]: distinct r-sets kept in colex order,
/// with a rank-space membership bitmap when C(n, r) is small enough.
class Family {
 public:
  /// Largest rank space that gets a membership bitmap.
  static constexpr std::uint64_t kIndexLimit = std::uint64_t{1} << 24;

  Family() = default;
  /// Empty family in [n]^(r).
  Family(int n, int r);

  /// Validates (cardinality, range, no duplicates) and sorts.
  static Family from_sets(int n, int r, std::vector<RSet> sets);
  static Family full(int n, int r);
  static Family star(int n, int r, int center);
  /// Members with the given colex ranks.
  static Family from_ranks(int n, int r, std::span<const std::uint64_t> ranks);

  int n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::span<const RSet> members() const noexcept { return members_; }
  const RSet& operator[](std::size_t i) const noexcept { return members_[i]; }
  std::uint64_t universe_size() const noexcept { return small_binom(n_, r_); }

  bool contains(RSet s) const noexcept;
  bool has_index() const noexcept { return static_cast<bool>(index_); }
  /// Membership through the rank bitmap (requires has_index()).
  bool index_contains(std::uint64_t rank) const noexcept;

  /// Sets containing x (1-based).
  Family subfamily_containing(int x) const;
  Family subfamily_avoiding(int x) const;
  Family unite(const Family& other) const;
  Family minus(const Family& other) const;
  /// [n]^(r) minus this family.
  Family complement_in_universe() const;
  std::vector<std::uint64_t> ranks() const;

  friend bool operator==(const Family& a, const Family& b) {
    return a.n_ == b.n_ && a.r_ == b.r_ && a.members_ == b.members_;
  }

 private:
  Family(int n, int r, std::vector<RSet> sorted_unique);
  void build_index();

  int n_ = 0;
  int r_ = 0;
  std::vector<RSet> members_;
  std::shared_ptr<const std::vector<std::uint64_t>> index_;
};

/// Header line "n r", then one set per line as r distinct integers in [1, n].
/// '#' starts a comment; blank lines are skipped. Throws ParseError.
Family parse_family(std::string_view text);
/// Canonical text: header then members in colex order, elements ascending.
std::string serialize_family(const Family& f);

Family read_family_file(const std::string& path);

}  // namespace kneserlab
