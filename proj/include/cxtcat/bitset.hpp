#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace cxtcat {

/// Dense, dynamically sized bitset. Index 0 is the least significant bit of
/// the first word; ordering (`lectic_less`) reads the set as a binary number.
class Bitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t n) : size_(n), words_((n + kWordBits - 1) / kWordBits, 0) {}

  static Bitset full(std::size_t n) {
    Bitset b(n);
    for (auto& w : b.words_) w = ~Word{0};
    b.trim();
    return b;
  }
  static Bitset from_indices(std::size_t n, std::span<const std::size_t> idx) {
    Bitset b(n);
    for (auto i : idx) b.set(i);
    return b;
  }
  static Bitset from_indices(std::size_t n, std::initializer_list<std::size_t> idx) {
    return from_indices(n, std::span<const std::size_t>(idx.begin(), idx.size()));
  }

  std::size_t size() const noexcept { return size_; }
  bool empty_domain() const noexcept { return size_ == 0; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  bool operator[](std::size_t i) const noexcept { return test(i); }
  void set(std::size_t i, bool v = true) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (v)
      words_[i / kWordBits] |= mask;
    else
      words_[i / kWordBits] &= ~mask;
  }
  void reset(std::size_t i) noexcept { set(i, false); }
  void clear() noexcept {
    for (auto& w : words_) w = 0;
  }
  void fill() noexcept {
    for (auto& w : words_) w = ~Word{0};
    trim();
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool any() const noexcept { return !none(); }
  bool all() const noexcept { return count() == size_; }

  Bitset& operator&=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator^=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  /// Set difference.
  Bitset& operator-=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  Bitset operator~() const {
    Bitset r(*this);
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  bool is_subset_of(const Bitset& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  /// First set index at or after `from`, or size() when none.
  std::size_t find_next(std::size_t from) const noexcept {
    if (from >= size_) return size_;
    std::size_t wi = from / kWordBits;
    Word w = words_[wi] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (w) return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi >= words_.size()) return size_;
      w = words_[wi];
    }
  }
  std::size_t find_first() const noexcept { return find_next(0); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w) {
        f(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  /// '0'/'1' characters, index 0 first.
  std::string to_string() const {
    std::string s(size_, '0');
    for_each([&](std::size_t i) { s[i] = '1'; });
    return s;
  }

  const std::vector<Word>& words() const noexcept { return words_; }

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ULL ^ size_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  friend bool operator==(const Bitset& a, const Bitset& b) noexcept {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  void trim() noexcept {
    if (size_ % kWordBits && !words_.empty()) words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// Compare as binary numbers with index 0 least significant.
inline bool lectic_less(const Bitset& a, const Bitset& b) noexcept {
  const auto& wa = a.words();
  const auto& wb = b.words();
  if (wa.size() != wb.size()) return wa.size() < wb.size();
  for (std::size_t i = wa.size(); i-- > 0;)
    if (wa[i] != wb[i]) return wa[i] < wb[i];
  return false;
}

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const noexcept { return b.hash(); }
};

/// Boolean matrix stored as row bitsets; also the representation of a finite
/// relation A -> B (row a is R(a) as a subset of B).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, Bitset(cols)) {}
  BitMatrix(std::size_t cols, std::vector<Bitset> rows) : cols_(cols), rows_(std::move(rows)) {}

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool at(std::size_t i, std::size_t j) const noexcept { return rows_[i].test(j); }
  void set(std::size_t i, std::size_t j, bool v = true) noexcept { rows_[i].set(j, v); }
  const Bitset& row(std::size_t i) const noexcept { return rows_[i]; }
  Bitset& row(std::size_t i) noexcept { return rows_[i]; }
  const std::vector<Bitset>& row_sets() const noexcept { return rows_; }

  Bitset column(std::size_t j) const {
    Bitset c(rows());
    for (std::size_t i = 0; i < rows(); ++i)
      if (rows_[i].test(j)) c.set(i);
    return c;
  }
  BitMatrix transpose() const {
    BitMatrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i) rows_[i].for_each([&](std::size_t j) { t.set(j, i); });
    return t;
  }
  bool is_subset_of(const BitMatrix& o) const noexcept {
    for (std::size_t i = 0; i < rows(); ++i)
      if (!rows_[i].is_subset_of(o.rows_[i])) return false;
    return true;
  }
  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (const auto& r : rows_) c += r.count();
    return c;
  }
  /// Row-major flattening (cell (i,j) at i*cols+j).
  Bitset flatten() const {
    Bitset f(rows() * cols_);
    for (std::size_t i = 0; i < rows(); ++i) rows_[i].for_each([&](std::size_t j) { f.set(i * cols_ + j); });
    return f;
  }
  static BitMatrix unflatten(const Bitset& f, std::size_t rows, std::size_t cols) {
    BitMatrix m(rows, cols);
    f.for_each([&](std::size_t k) { m.set(k / cols, k % cols); });
    return m;
  }
  /// Rows joined by '|', each row as '0'/'1'.
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i) s += '|';
      s += rows_[i].to_string();
    }
    return s;
  }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) noexcept {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<Bitset> rows_;
};

}  // namespace cxtcat

template <>
struct std::hash<cxtcat::Bitset> {
  std::size_t operator()(const cxtcat::Bitset& b) const noexcept { return b.hash(); }
};
