#include "vanet/graph.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace vanet {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::full: return "full";
    case Direction::upward: return "upward";
    case Direction::downward: return "downward";
    case Direction::symmetrized: return "symmetrized";
  }
  return "unknown";
}

Adjacency::Adjacency(std::size_t n, Direction direction)
    : n_(n), words_((n + kWordBits - 1) / kWordBits), direction_(direction), bits_(n * words_, 0) {}

Adjacency Adjacency::from_rows(const std::vector<std::vector<int>>& rows, Direction direction) {
  const std::size_t n = rows.size();
  Adjacency a(n, direction);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("adjacency rows must form a square matrix");
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] == 0) continue;
      if (i == j) throw std::invalid_argument("adjacency diagonal must be zero");
      a.set(i, j);
    }
  }
  return a;
}

std::size_t Adjacency::out_degree(std::size_t i) const {
  std::size_t d = 0;
  for (Word w : row_words(i)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

bool Adjacency::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (test(i, j) != test(j, i)) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> Adjacency::to_rows() const {
  std::vector<std::vector<int>> rows(n_, std::vector<int>(n_, 0));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) rows[i][j] = test(i, j) ? 1 : 0;
  }
  return rows;
}

Adjacency build_adjacency(const SpacingMatrix& spacing, const RangeAssignment& ranges) {
  const std::size_t n = spacing.size();
  if (ranges.ranges.size() != n) {
    throw std::invalid_argument("build_adjacency: spacing and range dimensions differ");
  }
  Adjacency a(n, Direction::full);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ranges.ranges[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && spacing(i, j) <= r) a.set(i, j);
    }
  }
  return a;
}

Adjacency project(const Adjacency& a, Direction direction) {
  if (direction != Direction::upward && direction != Direction::downward) {
    throw std::invalid_argument("project: direction must be upward or downward");
  }
  if (a.direction() != Direction::full) {
    throw std::invalid_argument("project: input must be a full adjacency");
  }
  const std::size_t n = a.size();
  Adjacency out(n, direction);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = direction == Direction::upward ? i + 1 : 0;
    const std::size_t hi = direction == Direction::upward ? n : i;
    for (std::size_t j = lo; j < hi; ++j) {
      if (a.test(i, j)) out.set(i, j);
    }
  }
  return out;
}

Adjacency symmetrize(const Adjacency& a) {
  if (a.direction() == Direction::full && !a.is_symmetric()) {
    throw std::invalid_argument("symmetrize: input must be a projection");
  }
  const std::size_t n = a.size();
  Adjacency out(n, Direction::symmetrized);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a.test(i, j)) {
        out.set(i, j);
        out.set(j, i);
      }
    }
  }
  return out;
}

Laplacian laplacian(const Adjacency& a) {
  if (!a.is_symmetric()) {
    throw std::invalid_argument("laplacian: adjacency must be symmetric");
  }
  const std::size_t n = a.size();
  SquareMatrix<double> m(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t deg = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (a.test(i, j)) {
        m(i, j) = -1.0;
        ++deg;
      }
    }
    m(i, i) = static_cast<double>(deg);
  }
  return Laplacian(std::move(m));
}

void write_grid(std::ostream& os, const Adjacency& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j) os << ' ';
      os << (a.test(i, j) ? 1 : 0);
    }
    os << '\n';
  }
}

void write_grid(std::ostream& os, const Laplacian& l) {
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t j = 0; j < l.size(); ++j) {
      if (j) os << ' ';
      os << static_cast<long long>(std::llround(l(i, j)));
    }
    os << '\n';
  }
}

}  // namespace vanet
