#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "vanet/matrix.hpp"
#include "vanet/range_policy.hpp"
#include "vanet/traffic.hpp"

namespace vanet {

enum class Direction { full, upward, downward, symmetrized };

std::string_view to_string(Direction d);

// Boolean adjacency with bit-packed rows. Entry (i, j) set means a directed
// link i -> j: receiver j lies within transmitter i's range.
class Adjacency {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Adjacency() = default;
  explicit Adjacency(std::size_t n, Direction direction = Direction::full);

  // Builds from 0/1 rows. Throws std::invalid_argument when not square or the
  // diagonal is set.
  static Adjacency from_rows(const std::vector<std::vector<int>>& rows,
                             Direction direction = Direction::full);

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }
  Direction direction() const noexcept { return direction_; }

  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / kWordBits] >> (j % kWordBits)) & 1U;
  }
  void set(std::size_t i, std::size_t j, bool value = true) {
    Word& w = bits_[i * words_ + j / kWordBits];
    const Word mask = Word{1} << (j % kWordBits);
    w = value ? (w | mask) : (w & ~mask);
  }

  std::span<const Word> row_words(std::size_t i) const { return {bits_.data() + i * words_, words_}; }
  std::span<Word> row_words(std::size_t i) { return {bits_.data() + i * words_, words_}; }

  std::size_t out_degree(std::size_t i) const;
  bool is_symmetric() const;
  std::vector<std::vector<int>> to_rows() const;

  friend bool operator==(const Adjacency& a, const Adjacency& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  Direction direction_ = Direction::full;
  std::vector<Word> bits_;
};

// L = D - A, stored dense.
class Laplacian {
 public:
  explicit Laplacian(SquareMatrix<double> entries) : m_(std::move(entries)) {}
  std::size_t size() const noexcept { return m_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const SquareMatrix<double>& matrix() const noexcept { return m_; }

 private:
  SquareMatrix<double> m_;
};

// entries(i, j) = spacing(i, j) <= ranges[i] for i != j; diagonal false.
Adjacency build_adjacency(const SpacingMatrix& spacing, const RangeAssignment& ranges);

// Keeps j > i (upward) or j < i (downward). Input must be a full adjacency.
Adjacency project(const Adjacency& a, Direction direction);

// Mirrors every set entry across the diagonal. Input must be a projection or
// already symmetric.
Adjacency symmetrize(const Adjacency& a);

// Rejects asymmetric input with std::invalid_argument.
Laplacian laplacian(const Adjacency& a);

// Plain-text dumps: row-major, space separated.
void write_grid(std::ostream& os, const Adjacency& a);
void write_grid(std::ostream& os, const Laplacian& l);

}  // namespace vanet
