#include "kneserlab/setfam.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "kneserlab/errors.hpp"

namespace kneserlab {

namespace {

constexpr auto kBinomTable = [] {
  std::array<std::array<std::uint64_t, 65>, 65> t{};
  for (int n = 0; n <= 64; ++n) {
    t[n][0] = 1;
    for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
  }
  return t;
}();

void check_shape(int n, int r) {
  if (n < 1 || n > kMaxGround) {
    throw DomainError("ground set size must satisfy 1 <= n <= " + std::to_string(kMaxGround) +
                      ", got " + std::to_string(n));
  }
  if (r < 0 || r > n) {
    throw DomainError("set size must satisfy 0 <= r <= n, got r=" + std::to_string(r));
  }
}

}  // namespace

RSet RSet::of(std::initializer_list<int> elements) {
  return of(std::span<const int>(elements.begin(), elements.size()));
}

RSet RSet::of(std::span<const int> elements) {
  RSet s;
  for (int x : elements) {
    if (x < 1 || x > kMaxGround) throw DomainError("element out of range: " + std::to_string(x));
    s.mask |= std::uint64_t{1} << (x - 1);
  }
  return s;
}

std::vector<int> RSet::elements() const {
  std::vector<int> out;
  for (std::uint64_t w = mask; w; w &= w - 1) out.push_back(std::countr_zero(w) + 1);
  return out;
}

std::uint64_t small_binom(int n, int k) noexcept {
  if (n < 0 || n > 64 || k < 0 || k > n) return 0;
  return kBinomTable[n][k];
}

std::uint64_t rank(RSet s) noexcept {
  std::uint64_t result = 0;
  int i = 1;
  for (std::uint64_t w = s.mask; w; w &= w - 1, ++i) {
    result += small_binom(std::countr_zero(w), i);
  }
  return result;
}

RSet unrank(std::uint64_t index, int n, int r) {
  check_shape(n, r);
  if (index >= small_binom(n, r)) {
    throw DomainError("rank " + std::to_string(index) + " out of range for C(" +
                      std::to_string(n) + "," + std::to_string(r) + ")");
  }
  RSet s;
  int top = n;
  for (int i = r; i >= 1; --i) {
    // Largest position p with C(p, i) <= index.
    int p = top - 1;
    while (small_binom(p, i) > index) --p;
    s.mask |= std::uint64_t{1} << p;
    index -= small_binom(p, i);
    top = p;
  }
  return s;
}

Family::Family(int n, int r) : n_(n), r_(r) {
  check_shape(n, r);
  build_index();
}

Family::Family(int n, int r, std::vector<RSet> sorted_unique)
    : n_(n), r_(r), members_(std::move(sorted_unique)) {
  build_index();
}

void Family::build_index() {
  const std::uint64_t universe = universe_size();
  if (universe > kIndexLimit) {
    index_.reset();
    return;
  }
  auto bits = std::make_shared<std::vector<std::uint64_t>>((universe + 63) / 64, 0);
  for (RSet s : members_) {
    const std::uint64_t i = rank(s);
    (*bits)[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  index_ = std::move(bits);
}

Family Family::from_sets(int n, int r, std::vector<RSet> sets) {
  check_shape(n, r);
  const std::uint64_t ground = ground_mask(n);
  for (RSet s : sets) {
    if (s.size() != r) throw DomainError("set has wrong cardinality for this family");
    if (s.mask & ~ground) throw DomainError("set has elements outside the ground set");
  }
  std::sort(sets.begin(), sets.end());
  if (std::adjacent_find(sets.begin(), sets.end()) != sets.end()) {
    throw DomainError("family contains a duplicate set");
  }
  return Family(n, r, std::move(sets));
}

Family Family::full(int n, int r) {
  check_shape(n, r);
  std::vector<RSet> sets;
  sets.reserve(small_binom(n, r));
  for_each_subset_of_size(ground_mask(n), r, [&](std::uint64_t m) { sets.push_back(RSet{m}); });
  return Family(n, r, std::move(sets));
}

Family Family::star(int n, int r, int center) {
  check_shape(n, r);
  if (center < 1 || center > n) throw DomainError("star center outside [n]");
  if (r == 0) return Family(n, r);
  const std::uint64_t c = std::uint64_t{1} << (center - 1);
  std::vector<RSet> sets;
  for_each_subset_of_size(ground_mask(n) & ~c, r - 1,
                          [&](std::uint64_t m) { sets.push_back(RSet{m | c}); });
  std::sort(sets.begin(), sets.end());
  return Family(n, r, std::move(sets));
}

Family Family::from_ranks(int n, int r, std::span<const std::uint64_t> ranks) {
  std::vector<RSet> sets;
  sets.reserve(ranks.size());
  for (auto i : ranks) sets.push_back(unrank(i, n, r));
  return from_sets(n, r, std::move(sets));
}

bool Family::contains(RSet s) const noexcept {
  if (s.size() != r_ || (s.mask & ~ground_mask(n_))) return false;
  if (index_) return index_contains(rank(s));
  return std::binary_search(members_.begin(), members_.end(), s);
}

bool Family::index_contains(std::uint64_t i) const noexcept {
  return ((*index_)[i >> 6] >> (i & 63)) & 1U;
}

Family Family::subfamily_containing(int x) const {
  if (x < 1 || x > n_) throw DomainError("element outside [n]");
  std::vector<RSet> out;
  for (RSet s : members_) {
    if (s.contains(x)) out.push_back(s);
  }
  return Family(n_, r_, std::move(out));
}

Family Family::subfamily_avoiding(int x) const {
  if (x < 1 || x > n_) throw DomainError("element outside [n]");
  std::vector<RSet> out;
  for (RSet s : members_) {
    if (!s.contains(x)) out.push_back(s);
  }
  return Family(n_, r_, std::move(out));
}

Family Family::unite(const Family& other) const {
  if (other.n_ != n_ || other.r_ != r_) throw DomainError("families have different shapes");
  std::vector<RSet> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out));
  return Family(n_, r_, std::move(out));
}

Family Family::minus(const Family& other) const {
  if (other.n_ != n_ || other.r_ != r_) throw DomainError("families have different shapes");
  std::vector<RSet> out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out));
  return Family(n_, r_, std::move(out));
}

Family Family::complement_in_universe() const { return full(n_, r_).minus(*this); }

std::vector<std::uint64_t> Family::ranks() const {
  std::vector<std::uint64_t> out;
  out.reserve(members_.size());
  for (RSet s : members_) out.push_back(rank(s));
  return out;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

int parse_int(std::string_view token, int line) {
  int value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("malformed integer '" + std::string(token) + "'", line);
  }
  return value;
}

}  // namespace

Family parse_family(std::string_view text) {
  int line_no = 0;
  bool have_header = false;
  int n = 0;
  int r = 0;
  std::vector<RSet> sets;
  std::vector<int> set_lines;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    if (!have_header) {
      if (tokens.size() != 2) throw ParseError("header must be 'n r'", line_no);
      n = parse_int(tokens[0], line_no);
      r = parse_int(tokens[1], line_no);
      if (n < 1 || n > kMaxGround || r < 1 || r > n) {
        throw ParseError("header requires 1 <= n <= 62 and 1 <= r <= n", line_no);
      }
      have_header = true;
    } else {
      RSet s;
      for (auto token : tokens) {
        const int x = parse_int(token, line_no);
        if (x < 1 || x > n) throw ParseError("element " + std::to_string(x) + " outside [1,n]", line_no);
        const std::uint64_t bit = std::uint64_t{1} << (x - 1);
        if (s.mask & bit) throw ParseError("duplicate element", line_no);
        s.mask |= bit;
      }
      if (static_cast<int>(tokens.size()) != r) {
        throw ParseError("wrong cardinality: expected " + std::to_string(r) + " elements, got " +
                             std::to_string(tokens.size()),
                         line_no);
      }
      sets.push_back(s);
      set_lines.push_back(line_no);
    }
    if (eol == text.size()) break;
  }
  if (!have_header) throw ParseError("missing header", line_no);

  std::vector<std::size_t> order(sets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sets[a] < sets[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (sets[order[i]] == sets[order[i - 1]]) {
      throw ParseError("duplicate set", set_lines[order[i]]);
    }
  }
  return Family::from_sets(n, r, std::move(sets));
}

std::string serialize_family(const Family& f) {
  std::ostringstream out;
  out << f.n() << ' ' << f.r() << '\n';
  for (RSet s : f.members()) {
    bool first = true;
    for (int x : s.elements()) {
      if (!first) out << ' ';
      out << x;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

Family read_family_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open family file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_family(buffer.str());
}

}  // namespace kneserlab
