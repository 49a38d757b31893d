//  Copyright 2026 The fintop Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef FINTOP_KTHEORY_HPP
#define FINTOP_KTHEORY_HPP

// Exact integer linear algebra for finitely generated abelian groups given by
// presentations Z^n / (column span of a relation matrix), and verification of
// exact and six-term exact sequences built from them.
//
// Groups are presentations, not normal forms: two groups are "equal" when
// their presentations coincide and "isomorphic" when their invariants do.
// Homomorphisms are integer matrices relative to fixed presentations.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fintop/error.hpp"
#include "fintop/point_set.hpp"
#include "fintop/space.hpp"
#include "fintop/topology.hpp"

namespace fintop {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols_if_empty = 0) {
    const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::InvalidInput, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw Error(ErrorKind::InvalidInput, "column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += q * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += q * (*this)(src, j);
  }
  /// col[dst] += q * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += q * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "matrix dimensions do not match");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

inline IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size()) throw Error(ErrorKind::ShapeMismatch, "matrix and vector do not match");
  IntVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  }
  return out;
}

inline IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "matrix dimensions differ");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  }
  return c;
}

/// [a | b]
inline IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "row counts differ");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

/// Block diagonal diag(a, b).
inline IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

struct SmithForm {
  IntMatrix u;      // unimodular, rows x rows
  IntMatrix u_inv;  // inverse of u
  IntMatrix d;      // diagonal, d_i >= 0, d_i | d_{i+1}
  IntMatrix v;      // unimodular, cols x cols
  std::size_t rank = 0;

  Integer diagonal(std::size_t i) const { return d(i, i); }
};

/// U * A * V = D with D in Smith normal form.
inline SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm s{IntMatrix::identity(m), IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
  IntMatrix& d = s.d;

  auto row_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    d.swap_rows(i, j);
    s.u.swap_rows(i, j);
    s.u_inv.swap_cols(i, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    d.swap_cols(i, j);
    s.v.swap_cols(i, j);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& q) {
    d.add_row(dst, src, q);
    s.u.add_row(dst, src, q);
    s.u_inv.add_col(src, dst, -q);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& q) {
    d.add_col(dst, src, q);
    s.v.add_col(dst, src, q);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Smallest nonzero entry of the remaining block becomes the pivot.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second)))) best = {i, j};
      }
    }
    if (!best) break;
    row_swap(t, best->first);
    col_swap(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        row_add(i, t, -(d(i, t) / d(t, t)));
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        col_add(j, t, -(d(t, j) / d(t, t)));
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot is left; move it to the pivot.
        std::optional<std::pair<std::size_t, std::size_t>> small;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (d(i, t) != 0 && (!small || abs(d(i, t)) < abs(d(small->first, small->second)))) small = {i, t};
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (d(t, j) != 0 && (!small || abs(d(t, j)) < abs(d(small->first, small->second)))) small = {t, j};
        }
        if (small && abs(d(small->first, small->second)) < abs(d(t, t))) {
          row_swap(t, small->first);
          col_swap(t, small->second);
        }
        continue;
      }
      // Pivot must divide the rest of the block.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (d(i, j) % d(t, t) != 0) {
            offender = i;
            break;
          }
        }
      }
      if (!offender) break;
      row_add(t, *offender, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.u.negate_row(t);
      s.u_inv.negate_col(t);
    }
    s.rank = t + 1;
  }
  return s;
}

/// Some x with A x = b over the integers, if one exists.
inline std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::ShapeMismatch, "right-hand side has the wrong length");
  const auto s = smith_normal_form(a);
  const IntVector c = s.u * b;
  IntVector y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < s.rank) {
      if (c[i] % s.diagonal(i) != 0) return std::nullopt;
      y[i] = c[i] / s.diagonal(i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.v * y;
}

/// Basis (as columns) of the integer solutions of A x = 0.
inline std::vector<IntVector> integer_kernel(const IntMatrix& a) {
  const auto s = smith_normal_form(a);
  std::vector<IntVector> out;
  for (std::size_t j = s.rank; j < a.cols(); ++j) out.push_back(s.v.column(j));
  return out;
}

/// Basis of the lattice spanned by the columns of W.
inline std::vector<IntVector> lattice_basis(const IntMatrix& w) {
  const auto s = smith_normal_form(w);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < s.rank; ++i) {
    IntVector b = s.u_inv.column(i);
    for (auto& e : b) e *= s.diagonal(i);
    out.push_back(std::move(b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Groups and homomorphisms
// ---------------------------------------------------------------------------

struct GroupInvariants {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  // each > 1, successive ones divide
  bool operator==(const GroupInvariants&) const = default;
};

/// Z^generators modulo the column span of `relations`.
class FGAbelianGroup {
 public:
  FGAbelianGroup() = default;

  FGAbelianGroup(std::size_t generators, IntMatrix relations) : generators_(generators), relations_(std::move(relations)) {
    if (relations_.rows() != generators_) {
      if (relations_.rows() == 0 && relations_.cols() == 0) {
        relations_ = IntMatrix(generators_, 0);
      } else {
        throw Error(ErrorKind::InvalidInput, "relation matrix must have one row per generator");
      }
    }
    const auto s = smith_normal_form(relations_);
    invariants_.rank = generators_ - s.rank;
    for (std::size_t i = 0; i < s.rank; ++i) {
      if (s.diagonal(i) > 1) invariants_.torsion.push_back(s.diagonal(i));
    }
  }

  static FGAbelianGroup free(std::size_t n) { return FGAbelianGroup(n, IntMatrix(n, 0)); }
  static FGAbelianGroup zero() { return free(0); }
  /// Z/d_1 + ... + Z/d_k with the diagonal presentation.
  static FGAbelianGroup cyclic_product(const std::vector<Integer>& orders) {
    IntMatrix r(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) r(i, i) = orders[i];
    return FGAbelianGroup(orders.size(), std::move(r));
  }

  std::size_t generators() const { return generators_; }
  const IntMatrix& relations() const { return relations_; }
  const GroupInvariants& invariants() const { return invariants_; }
  bool is_zero() const { return invariants_.rank == 0 && invariants_.torsion.empty(); }
  bool is_free() const { return invariants_.torsion.empty(); }
  bool isomorphic_to(const FGAbelianGroup& o) const { return invariants_ == o.invariants_; }

  /// v represents the zero element.
  bool is_trivial_element(const IntVector& v) const { return solve_integer(relations_, v).has_value(); }

  /// Same presentation.
  bool operator==(const FGAbelianGroup& o) const {
    return generators_ == o.generators_ && relations_ == o.relations_;
  }

 private:
  std::size_t generators_ = 0;
  IntMatrix relations_;
  GroupInvariants invariants_;
};

inline GroupInvariants invariants(const FGAbelianGroup& g) { return g.invariants(); }
inline bool is_zero(const FGAbelianGroup& g) { return g.is_zero(); }

inline FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b) {
  return FGAbelianGroup(a.generators() + b.generators(), block_diagonal(a.relations(), b.relations()));
}

/// Human-readable invariants, e.g. "Z^2 + Z/2 + Z/6" or "0".
inline std::string describe(const GroupInvariants& inv) {
  std::string s;
  if (inv.rank > 0) s = inv.rank == 1 ? "Z" : "Z^" + std::to_string(inv.rank);
  for (const auto& t : inv.torsion) s += (s.empty() ? "" : " + ") + ("Z/" + t.str());
  return s.empty() ? "0" : s;
}

class GroupHom {
 public:
  GroupHom() = default;

  /// `matrix` has one row per codomain generator and one column per domain
  /// generator; it must send domain relations into the codomain relations.
  GroupHom(FGAbelianGroup domain, FGAbelianGroup codomain, IntMatrix matrix)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.generators() || matrix_.cols() != domain_.generators()) {
      if (matrix_.rows() == 0 && matrix_.cols() == 0) {
        matrix_ = IntMatrix(codomain_.generators(), domain_.generators());
      } else {
        throw Error(ErrorKind::ShapeMismatch, "matrix shape does not match the groups");
      }
    }
    const IntMatrix image_of_relations = matrix_ * domain_.relations();
    for (std::size_t j = 0; j < image_of_relations.cols(); ++j) {
      if (!codomain_.is_trivial_element(image_of_relations.column(j))) {
        throw Error(ErrorKind::NotWellDefined, "relation " + std::to_string(j) + " is not sent to zero");
      }
    }
  }

  static GroupHom zero(const FGAbelianGroup& domain, const FGAbelianGroup& codomain) {
    return GroupHom(domain, codomain, IntMatrix(codomain.generators(), domain.generators()));
  }
  static GroupHom identity(const FGAbelianGroup& g) { return GroupHom(g, g, IntMatrix::identity(g.generators())); }

  const FGAbelianGroup& domain() const { return domain_; }
  const FGAbelianGroup& codomain() const { return codomain_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector operator()(const IntVector& v) const { return matrix_ * v; }

  /// Index of a domain generator not sent to zero.
  std::optional<std::size_t> nonzero_witness() const {
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
      if (!codomain_.is_trivial_element(matrix_.column(j))) return j;
    }
    return std::nullopt;
  }
  bool is_zero() const { return !nonzero_witness().has_value(); }

  bool operator==(const GroupHom&) const = default;

 private:
  FGAbelianGroup domain_;
  FGAbelianGroup codomain_;
  IntMatrix matrix_;
};

/// g after f.
inline GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!(f.codomain() == g.domain())) throw Error(ErrorKind::NotComposable, "codomain and domain presentations differ");
  return GroupHom(f.domain(), g.codomain(), g.matrix() * f.matrix());
}

/// f - g for parallel homomorphisms.
inline GroupHom difference(const GroupHom& f, const GroupHom& g) {
  if (!(f.domain() == g.domain()) || !(f.codomain() == g.codomain())) {
    throw Error(ErrorKind::ShapeMismatch, "homomorphisms are not parallel");
  }
  return GroupHom(f.domain(), f.codomain(), f.matrix() - g.matrix());
}

struct Kernel {
  FGAbelianGroup group;
  GroupHom inclusion;
};

struct Cokernel {
  FGAbelianGroup group;
  GroupHom projection;
};

struct Image {
  /// The image, presented on the domain generators.
  FGAbelianGroup group;
  GroupHom inclusion;
};

namespace detail {

/// Lattice of x in Z^n with f(x) = 0 in the codomain.
inline std::vector<IntVector> kernel_lattice_generators(const GroupHom& f) {
  const std::size_t n = f.domain().generators();
  const auto sols = integer_kernel(hconcat(f.matrix(), f.codomain().relations()));
  std::vector<IntVector> out;
  for (const auto& s : sols) out.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

}  // namespace detail

inline Kernel kernel(const GroupHom& f) {
  const std::size_t n = f.domain().generators();
  const auto gens = detail::kernel_lattice_generators(f);
  const auto basis = lattice_basis(IntMatrix::from_columns(n, gens));
  const IntMatrix b = IntMatrix::from_columns(n, basis);
  const IntMatrix& rel = f.domain().relations();
  IntMatrix coords(basis.size(), rel.cols());
  for (std::size_t j = 0; j < rel.cols(); ++j) {
    auto c = solve_integer(b, rel.column(j));
    if (!c) throw Error(ErrorKind::InternalInconsistency, "domain relation outside the kernel lattice");
    for (std::size_t i = 0; i < basis.size(); ++i) coords(i, j) = (*c)[i];
  }
  FGAbelianGroup k(basis.size(), std::move(coords));
  return {k, GroupHom(k, f.domain(), b)};
}

inline Cokernel cokernel(const GroupHom& f) {
  FGAbelianGroup c(f.codomain().generators(), hconcat(f.codomain().relations(), f.matrix()));
  return {c, GroupHom(f.codomain(), c, IntMatrix::identity(f.codomain().generators()))};
}

inline Image image(const GroupHom& f) {
  const std::size_t n = f.domain().generators();
  const auto gens = detail::kernel_lattice_generators(f);
  FGAbelianGroup g(n, IntMatrix::from_columns(n, gens));
  return {g, GroupHom(g, f.codomain(), f.matrix())};
}

/// v lies in the image of f (v given in codomain coordinates).
inline bool in_image(const GroupHom& f, const IntVector& v) {
  return solve_integer(hconcat(f.matrix(), f.codomain().relations()), v).has_value();
}

struct ExactnessResult {
  bool exact = false;
  /// Empty when exact; otherwise "composite" or "kernel".
  std::string failure;
  /// Domain generator index (composite failure) or kernel element of the middle
  /// group not in the image (kernel failure).
  IntVector witness;
};

/// Exactness of A --f--> B --g--> C at B.
inline ExactnessResult is_exact_at(const GroupHom& f, const GroupHom& g) {
  if (!(f.codomain() == g.domain())) throw Error(ErrorKind::NotComposable, "sequence is not composable");
  const GroupHom gf = compose(g, f);
  if (auto j = gf.nonzero_witness()) return {false, "composite", {Integer(*j)}};
  const Kernel k = kernel(g);
  for (std::size_t j = 0; j < k.inclusion.matrix().cols(); ++j) {
    IntVector v = k.inclusion.matrix().column(j);
    if (!in_image(f, v)) return {false, "kernel", std::move(v)};
  }
  return {true, "", {}};
}

/// Six groups in cyclic order; maps[i] runs from groups[i] to groups[i+1 mod 6].
struct SixTermCycle {
  std::array<FGAbelianGroup, 6> groups;
  std::array<GroupHom, 6> maps;
};

struct SixTermReport {
  /// nodes[j]: exactness at groups[j], between maps[j-1] and maps[j].
  std::array<ExactnessResult, 6> nodes;
  bool exact() const {
    return std::all_of(nodes.begin(), nodes.end(), [](const ExactnessResult& r) { return r.exact; });
  }
};

inline SixTermReport verify_six_term(const SixTermCycle& c) {
  for (std::size_t i = 0; i < 6; ++i) {
    if (!(c.maps[i].domain() == c.groups[i]) || !(c.maps[i].codomain() == c.groups[(i + 1) % 6])) {
      throw Error(ErrorKind::ShapeMismatch, "map " + std::to_string(i) + " does not match the cycle's groups");
    }
  }
  SixTermReport r;
  for (std::size_t j = 0; j < 6; ++j) r.nodes[j] = is_exact_at(c.maps[(j + 5) % 6], c.maps[j]);
  return r;
}

/// 0 -> ker f -> A -> B -> coker f -> 0 -> 0, closed up into a cycle.
inline SixTermCycle kernel_cokernel_cycle(const GroupHom& f) {
  const auto k = kernel(f);
  const auto c = cokernel(f);
  const auto zero = FGAbelianGroup::zero();
  SixTermCycle cyc{{k.group, f.domain(), f.codomain(), c.group, zero, zero},
                   {k.inclusion, f, c.projection, GroupHom::zero(c.group, zero), GroupHom::zero(zero, zero),
                    GroupHom::zero(zero, k.group)}};
  return cyc;
}

// ---------------------------------------------------------------------------
// K-theoretic data over a finite space
// ---------------------------------------------------------------------------

struct GradedGroup {
  FGAbelianGroup even;
  FGAbelianGroup odd;
  bool is_zero() const { return even.is_zero() && odd.is_zero(); }
  bool operator==(const GradedGroup&) const = default;
};

/// The six maps of the cycle for an open U of a locally closed Y, in order
///   K0(U) -> K0(Y) -> K0(Y\U) -> K1(U) -> K1(Y) -> K1(Y\U) -> K0(U).
struct DatumTriangle {
  PointSet open;
  PointSet set;
  std::array<IntMatrix, 6> maps;
};

struct FiltratedKDatum {
  FiniteSpace space;
  /// Keyed by the carrier of a nonempty locally closed set.
  std::map<std::uint64_t, GradedGroup> groups;
  std::vector<DatumTriangle> triangles;

  const GradedGroup& at(PointSet y) const {
    auto it = groups.find(y.bits());
    if (it == groups.end()) throw Error(ErrorKind::ShapeMismatch, "no group assigned to a locally closed set", {y});
    return it->second;
  }
};

/// Nonempty proper subsets U of Y that are relatively open in Y.
inline std::vector<PointSet> relatively_open_parts(const FiniteSpace& x, PointSet y) {
  std::vector<PointSet> out;
  const auto pts = y.members();
  for (std::uint64_t m = 1; m + 1 < (std::uint64_t{1} << pts.size()); ++m) {
    const PointSet u = expand(PointSet(m), y);
    if ((up_closure(x, u) & y) == u) out.push_back(u);
  }
  return out;
}

/// Every (U, Y) with Y locally closed and U a nonempty proper open part of Y.
inline std::vector<std::pair<PointSet, PointSet>> required_triangles(const FiniteSpace& x) {
  std::vector<std::pair<PointSet, PointSet>> out;
  for (const auto& lc : locally_closed_sets(x)) {
    if (lc.carrier.size() < 2) continue;
    for (auto u : relatively_open_parts(x, lc.carrier)) out.emplace_back(u, lc.carrier);
  }
  return out;
}

inline SixTermCycle datum_cycle(const FiltratedKDatum& d, const DatumTriangle& t) {
  const auto& ku = d.at(t.open);
  const auto& ky = d.at(t.set);
  const auto& kq = d.at(t.set - t.open);
  std::array<FGAbelianGroup, 6> g{ku.even, ky.even, kq.even, ku.odd, ky.odd, kq.odd};
  SixTermCycle c{g, {}};
  for (std::size_t i = 0; i < 6; ++i) c.maps[i] = GroupHom(g[i], g[(i + 1) % 6], t.maps[i]);
  return c;
}

struct TriangleResult {
  PointSet open;
  PointSet set;
  SixTermReport report;
};

struct DatumReport {
  std::vector<TriangleResult> triangles;
  bool ok() const {
    return std::all_of(triangles.begin(), triangles.end(), [](const TriangleResult& t) { return t.report.exact(); });
  }
  /// First (U, Y) whose cycle is not exact.
  std::optional<std::pair<PointSet, PointSet>> first_failure() const {
    for (const auto& t : triangles) {
      if (!t.report.exact()) return std::make_pair(t.open, t.set);
    }
    return std::nullopt;
  }
};

/// Checks the datum's shape and runs verify_six_term on every triangle.
inline DatumReport verify_datum(const FiltratedKDatum& d) {
  const auto& x = d.space;
  for (const auto& [bits, g] : d.groups) {
    if (!is_locally_closed(x, PointSet(bits))) {
      throw Error(ErrorKind::ShapeMismatch, "group assigned to a set that is not locally closed", {PointSet(bits)});
    }
  }
  for (const auto& lc : locally_closed_sets(x)) {
    if (!lc.carrier.empty()) d.at(lc.carrier);
  }
  std::map<std::pair<std::uint64_t, std::uint64_t>, const DatumTriangle*> by_pair;
  for (const auto& t : d.triangles) {
    if (!is_locally_closed(x, t.set) || t.open.empty() || t.open == t.set || !t.open.subset_of(t.set) ||
        (up_closure(x, t.open) & t.set) != t.open) {
      throw Error(ErrorKind::ShapeMismatch, "triangle is not an open part of a locally closed set", {t.open, t.set});
    }
    if (!by_pair.emplace(std::make_pair(t.open.bits(), t.set.bits()), &t).second) {
      throw Error(ErrorKind::ShapeMismatch, "duplicate triangle", {t.open, t.set});
    }
  }
  DatumReport report;
  for (auto [u, y] : required_triangles(x)) {
    auto it = by_pair.find({u.bits(), y.bits()});
    if (it == by_pair.end()) throw Error(ErrorKind::ShapeMismatch, "missing triangle", {u, y});
    report.triangles.push_back({u, y, verify_six_term(datum_cycle(d, *it->second))});
  }
  return report;
}

struct VanishingReport {
  /// False when some singleton group is nonzero, so the hypothesis fails.
  bool applicable = false;
  bool all_vanish = false;
  /// Sets in the order their vanishing was derived.
  std::vector<PointSet> derivation;
  /// First (U, Y) where the datum has a nonzero group although the groups at
  /// U and Y \ U were already forced to vanish.
  std::optional<std::pair<PointSet, PointSet>> deviation;
};

/// Re-derives, by induction over the canonical filtration, that vanishing of
/// all singleton groups forces every group to vanish. A set Y of top level j
/// is split as Y & F_{j-1} (open in Y) and the rest, which lies in the
/// discrete stratum X_j; a set inside one stratum is split off one point.
inline VanishingReport vanishing_propagation(const FiltratedKDatum& d) {
  const auto& x = d.space;
  VanishingReport r;
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (!d.at(PointSet::singleton(p)).is_zero()) return r;
  }
  r.applicable = true;
  const auto filt = canonical_filtration(x);
  auto level = [&](PointSet y) {
    std::size_t l = 0;
    y.for_each([&](std::size_t p) { l = std::max(l, stratum_of(filt, p)); });
    return l;
  };
  std::vector<PointSet> order;
  for (const auto& lc : locally_closed_sets(x)) {
    if (!lc.carrier.empty()) order.push_back(lc.carrier);
  }
  std::stable_sort(order.begin(), order.end(), [&](PointSet a, PointSet b) {
    auto la = level(a), lb = level(b);
    return la != lb ? la < lb : a.size() < b.size();
  });
  std::unordered_set<PointSet> vanished;
  for (auto y : order) {
    if (y.size() == 1) {
      vanished.insert(y);
      r.derivation.push_back(y);
      continue;
    }
    PointSet u = y & filt.layers[level(y) - 1];
    if (u.empty()) u = PointSet::singleton(y.first());
    if (!vanished.contains(u) || !vanished.contains(y - u)) {
      throw Error(ErrorKind::InternalInconsistency, "induction order broken", {u, y});
    }
    if (!d.at(y).is_zero()) {
      r.deviation = std::make_pair(u, y);
      return r;
    }
    vanished.insert(y);
    r.derivation.push_back(y);
  }
  r.all_vanish = true;
  return r;
}

/// Split datum: K(Y) is the direct sum of the point groups over Y, the maps
/// are block inclusions and projections, and the boundary maps vanish.
inline FiltratedKDatum split_datum(const FiniteSpace& x, const std::vector<GradedGroup>& points) {
  if (points.size() != x.size()) throw Error(ErrorKind::InvalidInput, "one graded group per point is required");
  FiltratedKDatum d{x, {}, {}};
  auto sum = [&](PointSet y, bool even) {
    FGAbelianGroup g = FGAbelianGroup::zero();
    y.for_each([&](std::size_t p) { g = direct_sum(g, even ? points[p].even : points[p].odd); });
    return g;
  };
  for (const auto& lc : locally_closed_sets(x)) {
    if (!lc.carrier.empty()) d.groups[lc.carrier.bits()] = {sum(lc.carrier, true), sum(lc.carrier, false)};
  }
  // Generator offsets of each point inside the sum over y.
  auto offsets = [&](PointSet y, bool even) {
    std::vector<std::pair<std::size_t, std::size_t>> out(x.size(), {0, 0});
    std::size_t at = 0;
    y.for_each([&](std::size_t p) {
      const std::size_t k = (even ? points[p].even : points[p].odd).generators();
      out[p] = {at, k};
      at += k;
    });
    return std::make_pair(out, at);
  };
  // Matrix from the sum over `from` to the sum over `to`, identity on shared points.
  auto block = [&](PointSet from, PointSet to, bool even) {
    auto [fo, fn] = offsets(from, even);
    auto [to_off, tn] = offsets(to, even);
    IntMatrix m(tn, fn);
    (from & to).for_each([&](std::size_t p) {
      for (std::size_t i = 0; i < fo[p].second; ++i) m(to_off[p].first + i, fo[p].first + i) = 1;
    });
    return m;
  };
  for (auto [u, y] : required_triangles(x)) {
    const PointSet q = y - u;
    DatumTriangle t{u, y, {}};
    t.maps[0] = block(u, y, true);
    t.maps[1] = block(y, q, true);
    t.maps[2] = IntMatrix(offsets(u, false).second, offsets(q, true).second);
    t.maps[3] = block(u, y, false);
    t.maps[4] = block(y, q, false);
    t.maps[5] = IntMatrix(offsets(u, true).second, offsets(q, false).second);
    d.triangles.push_back(std::move(t));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Degenerate long exact sequence over the two-point space
// ---------------------------------------------------------------------------

struct TwoPointResult {
  GroupHom delta;
  FGAbelianGroup kernel;
  FGAbelianGroup cokernel;
  /// coker + ker when ker is free (the extension splits); absent otherwise.
  std::optional<FGAbelianGroup> middle;
  /// "ExtensionAmbiguous" when the middle group is not determined.
  std::string note;
};

/// delta is the diagonal of the commuting square
///   top:    KK0(I,J)   -> KK0(I,B)
///   right:  KK0(I,B)   -> KK1(A/I,B)
///   left:   KK0(I,J)   -> KK1(A/I,J)
///   bottom: KK1(A/I,J) -> KK1(A/I,B)
/// and the middle group is an extension of ker delta by coker delta.
inline TwoPointResult two_point_sequence(const GroupHom& top, const GroupHom& right, const GroupHom& left,
                                         const GroupHom& bottom) {
  if (!(top.domain() == left.domain()) || !(top.codomain() == right.domain()) ||
      !(left.codomain() == bottom.domain()) || !(right.codomain() == bottom.codomain())) {
    throw Error(ErrorKind::ShapeMismatch, "the four maps do not form a square");
  }
  const GroupHom delta = compose(right, top);
  const GroupHom other = compose(bottom, left);
  if (auto j = difference(delta, other).nonzero_witness()) {
    throw Error(ErrorKind::SquareNotCommuting, "square does not commute on generator " + std::to_string(*j));
  }
  TwoPointResult r{delta, kernel(delta).group, cokernel(delta).group, std::nullopt, ""};
  if (r.kernel.is_free()) {
    r.middle = direct_sum(r.cokernel, r.kernel);
  } else {
    r.note = "ExtensionAmbiguous";
  }
  return r;
}

}  // namespace fintop

#endif  // FINTOP_KTHEORY_HPP
