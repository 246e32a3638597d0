#include "filtspec/homology.hpp"

#include <algorithm>
#include <map>

#include "filtspec/errors.hpp"
#include "linalg.hpp"

namespace filtspec {

namespace {

linalg::FieldContext field_context(const Ring& ring) {
  linalg::FieldContext F;
  F.p = ring.kind() == RingKind::prime_field ? ring.prime() : 0;
  return F;
}

void require_base_ring(const FilteredComplex& c, const char* where) {
  if (c.ring().is_novikov())
    throw unsupported_ring_error(std::string(where) +
                                 ": Novikov rings are handled by windowed reduction "
                                 "in the spectral module");
}

std::vector<int> gens_of_degree(const FilteredComplex& c, int degree) {
  std::vector<int> out;
  for (int i = 0; i < c.size(); ++i)
    if (c.generator(i).degree == degree) out.push_back(i);
  return out;
}

// d restricted to given row/column generator lists, as exact rationals
linalg::Matrix boundary_matrix(const FilteredComplex& c, const std::vector<int>& rows,
                               const std::vector<int>& cols) {
  std::map<int, int> row_pos;
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = static_cast<int>(i);
  linalg::Matrix m(rows.size(), std::vector<Rational>(cols.size(), Rational(0)));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [dst, coeff] : c.column(cols[j])) {
      auto it = row_pos.find(dst);
      if (it != row_pos.end()) m[it->second][j] = coeff.rational_value();
    }
  return m;
}

linalg::IntMatrix to_int_matrix(const linalg::Matrix& m) {
  linalg::IntMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (const auto& q : m[i]) out[i].push_back(numerator(q));
  }
  return out;
}

std::vector<Rational> restrict_dense(const std::vector<Coefficient>& chain,
                                     const std::vector<int>& gens) {
  std::vector<Rational> out;
  out.reserve(gens.size());
  for (int g : gens) out.push_back(chain[g].rational_value());
  return out;
}

HomologyBasis integer_homology(const FilteredComplex& c, int degree) {
  auto rows_below = gens_of_degree(c, degree - 1);
  auto gens_d = gens_of_degree(c, degree);
  auto gens_up = gens_of_degree(c, degree + 1);
  HomologyBasis out;
  out.degree = degree;
  if (gens_d.empty()) return out;

  int dim = static_cast<int>(gens_d.size());
  auto bd = to_int_matrix(boundary_matrix(c, rows_below, gens_d));
  auto snf_bd = linalg::smith_normal_form(bd, dim);
  auto kernel = linalg::kernel_integer(snf_bd);  // cycle lattice basis, in deg-d coords
  int kdim = static_cast<int>(kernel.size());
  if (kdim == 0) return out;

  // kernel vectors as matrix columns; boundaries expressed in this basis
  linalg::IntMatrix kmat(dim, std::vector<Int>(kdim, 0));
  for (int j = 0; j < kdim; ++j)
    for (int i = 0; i < dim; ++i) kmat[i][j] = kernel[j][i];
  auto snf_k = linalg::smith_normal_form(kmat, kdim);

  auto bu = to_int_matrix(boundary_matrix(c, gens_d, gens_up));
  int n_up = static_cast<int>(gens_up.size());
  linalg::IntMatrix image_coords(kdim, std::vector<Int>(n_up, 0));
  for (int j = 0; j < n_up; ++j) {
    std::vector<Int> b(dim);
    for (int i = 0; i < dim; ++i) b[i] = bu[i][j];
    auto y = linalg::solve_integer(snf_k, b);
    if (!y) throw std::logic_error("integer_homology: boundary is not a cycle");
    for (int i = 0; i < kdim; ++i) image_coords[i][j] = (*y)[i];
  }
  auto snf_m = linalg::smith_normal_form(image_coords, n_up);

  auto class_from_uinv_column = [&](int col) {
    std::vector<std::pair<int, Coefficient>> support;
    for (int i = 0; i < dim; ++i) {
      Int v = 0;
      for (int k = 0; k < kdim; ++k) v += kmat[i][k] * snf_m.u_inv[k][col];
      if (v != 0) support.push_back({gens_d[i], Coefficient::from_rational(c.ring(), Rational(v))});
    }
    return ChainClass(c, degree, std::move(support));
  };

  for (int i = 0; i < snf_m.rank; ++i) {
    Int order = snf_m.d[i][i];
    if (order < 0) order = -order;
    if (order > 1) out.torsion_part.push_back({class_from_uinv_column(i), order});
  }
  for (int i = snf_m.rank; i < kdim; ++i) out.free_part.push_back(class_from_uinv_column(i));
  return out;
}

}  // namespace

HomologyBasis homology(const FilteredComplex& c, int degree) {
  require_base_ring(c, "homology");
  if (c.ring().is_field()) {
    HomologyBasis out;
    out.degree = degree;
    out.free_part = FieldReduction(c).homology_basis(degree);
    return out;
  }
  return integer_homology(c, degree);
}

std::optional<std::vector<Coefficient>> boundary_witness(const FilteredComplex& c,
                                                         const ChainClass& z) {
  require_base_ring(c, "boundary_witness");
  if (&z.complex() != &c) throw std::invalid_argument("boundary_witness: class/complex mismatch");
  int degree = z.degree();
  auto rows = gens_of_degree(c, degree);
  auto cols = gens_of_degree(c, degree + 1);
  auto b = restrict_dense(z.dense(), rows);
  auto m = boundary_matrix(c, rows, cols);
  std::vector<Coefficient> witness(c.size(), Coefficient::zero(c.ring()));
  if (c.ring().is_field()) {
    auto x = linalg::solve(field_context(c.ring()), m, b, static_cast<int>(cols.size()));
    if (!x) return std::nullopt;
    for (std::size_t j = 0; j < cols.size(); ++j)
      witness[cols[j]] = Coefficient::from_rational(c.ring(), (*x)[j]);
    return witness;
  }
  std::vector<Int> bi;
  bi.reserve(b.size());
  for (const auto& q : b) bi.push_back(numerator(q));
  auto snf = linalg::smith_normal_form(to_int_matrix(m), static_cast<int>(cols.size()));
  auto x = linalg::solve_integer(snf, bi);
  if (!x) return std::nullopt;
  for (std::size_t j = 0; j < cols.size(); ++j)
    witness[cols[j]] = Coefficient::from_rational(c.ring(), Rational((*x)[j]));
  return witness;
}

bool is_boundary(const FilteredComplex& c, const ChainClass& z) {
  return boundary_witness(c, z).has_value();
}

// -------------------------------------------------------------------------
// MembershipOracle

namespace {

// Reusable solvability tester for A x = b with varying b: eliminates [A | I]
// once, then checks that E b vanishes on the pivot-free rows.
struct FieldSolver {
  linalg::FieldContext F;
  int acols = 0;
  int nrows = 0;
  int rank = 0;
  linalg::Matrix red;  // echelon form of [A | I]

  FieldSolver() = default;
  FieldSolver(const linalg::FieldContext& ctx, linalg::Matrix a, int cols) : F(ctx), acols(cols) {
    nrows = static_cast<int>(a.size());
    red = std::move(a);
    for (int i = 0; i < nrows; ++i) {
      red[i].resize(acols + nrows, Rational(0));
      red[i][acols + i] = 1;
    }
    int r = 0;
    for (int c = 0; c < acols && r < nrows; ++c) {
      int pivot = -1;
      for (int i = r; i < nrows; ++i)
        if (F.reduce(red[i][c]) != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) continue;
      std::swap(red[r], red[pivot]);
      Rational inv = F.inv(red[r][c]);
      for (int j = 0; j < acols + nrows; ++j) red[r][j] = F.mul(red[r][j], inv);
      for (int i = 0; i < nrows; ++i) {
        if (i == r) continue;
        Rational f = F.reduce(red[i][c]);
        if (f == 0) continue;
        for (int j = 0; j < acols + nrows; ++j)
          red[i][j] = F.sub(red[i][j], F.mul(f, red[r][j]));
      }
      ++r;
    }
    rank = r;
  }

  bool solvable(const std::vector<Rational>& b) const {
    for (int i = rank; i < nrows; ++i) {
      Rational acc(0);
      for (int j = 0; j < nrows; ++j)
        if (b[j] != 0) acc += red[i][acols + j] * b[j];
      if (F.reduce(acc) != 0) return false;
    }
    return true;
  }
};

}  // namespace

struct MembershipOracle::Impl {
  const FilteredComplex* cx;
  bool integer;
  linalg::FieldContext F;
  // degree -> generators of that degree sorted by action descending (stable)
  std::map<int, std::vector<int>> rows_sorted;
  std::map<int, std::vector<int>> cols_up;
  std::map<std::pair<int, int>, FieldSolver> field_cache;
  std::map<std::pair<int, int>, linalg::SmithForm> snf_cache;

  const std::vector<int>& sorted_rows(int degree) {
    auto it = rows_sorted.find(degree);
    if (it != rows_sorted.end()) return it->second;
    auto rows = gens_of_degree(*cx, degree);
    std::stable_sort(rows.begin(), rows.end(), [&](int a, int b) {
      return cx->generator(a).action > cx->generator(b).action;
    });
    return rows_sorted.emplace(degree, std::move(rows)).first->second;
  }

  const std::vector<int>& up_cols(int degree) {
    auto it = cols_up.find(degree);
    if (it != cols_up.end()) return it->second;
    return cols_up.emplace(degree, gens_of_degree(*cx, degree + 1)).first->second;
  }
};

MembershipOracle::MembershipOracle(const FilteredComplex& c) : impl_(std::make_unique<Impl>()) {
  require_base_ring(c, "MembershipOracle");
  impl_->cx = &c;
  impl_->integer = c.ring().kind() == RingKind::integers;
  impl_->F = field_context(c.ring());
}

MembershipOracle::~MembershipOracle() = default;
MembershipOracle::MembershipOracle(MembershipOracle&&) noexcept = default;

bool MembershipOracle::in_image(const Rational& threshold, const ChainClass& alpha) {
  Impl& im = *impl_;
  if (&alpha.complex() != im.cx)
    throw std::invalid_argument("MembershipOracle: class/complex mismatch");
  int degree = alpha.degree();
  const auto& rows = im.sorted_rows(degree);
  int prefix = 0;
  while (prefix < static_cast<int>(rows.size()) &&
         im.cx->generator(rows[prefix]).action >= threshold)
    ++prefix;
  if (prefix == 0) return true;

  std::vector<int> row_subset(rows.begin(), rows.begin() + prefix);
  auto dense = alpha.dense();
  auto b = restrict_dense(dense, row_subset);
  const auto& cols = im.up_cols(degree);
  auto key = std::make_pair(degree, prefix);

  if (im.integer) {
    auto it = im.snf_cache.find(key);
    if (it == im.snf_cache.end()) {
      auto m = to_int_matrix(boundary_matrix(*im.cx, row_subset, cols));
      it = im.snf_cache.emplace(key, linalg::smith_normal_form(std::move(m),
                                                               static_cast<int>(cols.size())))
               .first;
    }
    std::vector<Int> bi;
    bi.reserve(b.size());
    for (const auto& q : b) bi.push_back(numerator(q));
    return linalg::solve_integer(it->second, bi).has_value();
  }
  auto it = im.field_cache.find(key);
  if (it == im.field_cache.end()) {
    auto m = boundary_matrix(*im.cx, row_subset, cols);
    it = im.field_cache
             .emplace(key, FieldSolver(im.F, std::move(m), static_cast<int>(cols.size())))
             .first;
  }
  return it->second.solvable(b);
}

bool in_image_of_sublevel(const FilteredComplex& c, const Rational& a, const ChainClass& alpha) {
  MembershipOracle oracle(c);
  return oracle.in_image(a, alpha);
}

// -------------------------------------------------------------------------
// FieldReduction

struct FieldReduction::Impl {
  const FilteredComplex* cx;
  linalg::FieldContext F;
  std::vector<int> order;  // generator indices sorted by (action, input index)
  std::vector<int> pos;    // inverse permutation
  // sparse columns in position coordinates, entries sorted ascending
  using Sparse = std::vector<std::pair<int, Rational>>;
  std::vector<Sparse> reduced;     // R_k for source order[k] (empty = cycle)
  std::vector<Sparse> combo;       // V_k: chain achieving R_k, in position coords
  std::vector<int> owner;          // low position -> column index k, -1 if none

  Sparse subtract_scaled(const Sparse& a, const Sparse& b, const Rational& f) const {
    // a - f*b, merged by position
    Sparse out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.push_back({b[j].first, F.mul(F.neg(f), b[j].second)});
        ++j;
      } else {
        Rational v = F.sub(a[i].second, F.mul(f, b[j].second));
        if (v != 0) out.push_back({a[i].first, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  // reduces a chain against the stored columns; returns the reduced chain
  Sparse reduce_chain(Sparse chain, Sparse* trace) const {
    while (!chain.empty()) {
      int low = chain.back().first;
      int k = owner[low];
      if (k < 0) break;
      Rational f = F.mul(chain.back().second, F.inv(reduced[k].back().second));
      chain = subtract_scaled(chain, reduced[k], f);
      if (trace) *trace = subtract_scaled(*trace, combo[k], f);
    }
    return chain;
  }
};

FieldReduction::FieldReduction(const FilteredComplex& c) : impl_(std::make_unique<Impl>()) {
  if (!c.ring().is_field())
    throw unsupported_ring_error("FieldReduction: requires a field coefficient ring");
  Impl& im = *impl_;
  im.cx = &c;
  im.F = field_context(c.ring());
  int n = c.size();
  im.order.resize(n);
  for (int i = 0; i < n; ++i) im.order[i] = i;
  std::stable_sort(im.order.begin(), im.order.end(), [&](int a, int b) {
    if (c.generator(a).action != c.generator(b).action)
      return c.generator(a).action < c.generator(b).action;
    return a < b;
  });
  im.pos.resize(n);
  for (int k = 0; k < n; ++k) im.pos[im.order[k]] = k;
  im.reduced.resize(n);
  im.combo.resize(n);
  im.owner.assign(n, -1);

  for (int k = 0; k < n; ++k) {
    int src = im.order[k];
    Impl::Sparse col;
    for (const auto& [dst, coeff] : c.column(src)) col.push_back({im.pos[dst], coeff.rational_value()});
    std::sort(col.begin(), col.end());
    Impl::Sparse trace{{k, Rational(1)}};
    col = im.reduce_chain(std::move(col), &trace);
    im.reduced[k] = std::move(col);
    im.combo[k] = std::move(trace);
    if (!im.reduced[k].empty()) im.owner[im.reduced[k].back().first] = k;
  }
}

FieldReduction::~FieldReduction() = default;
FieldReduction::FieldReduction(FieldReduction&&) noexcept = default;

const FilteredComplex& FieldReduction::complex() const { return *impl_->cx; }

std::optional<Rational> FieldReduction::minimal_max_action(const ChainClass& alpha) const {
  const Impl& im = *impl_;
  if (&alpha.complex() != im.cx)
    throw std::invalid_argument("FieldReduction: class/complex mismatch");
  Impl::Sparse chain;
  for (const auto& [gen, coeff] : alpha.support()) chain.push_back({im.pos[gen], coeff.rational_value()});
  std::sort(chain.begin(), chain.end());
  chain = im.reduce_chain(std::move(chain), nullptr);
  if (chain.empty()) return std::nullopt;
  return im.cx->generator(im.order[chain.back().first]).action;
}

std::vector<ChainClass> FieldReduction::homology_basis(int degree) const {
  const Impl& im = *impl_;
  std::vector<ChainClass> basis;
  for (int k = 0; k < static_cast<int>(im.order.size()); ++k) {
    int gen = im.order[k];
    if (im.cx->generator(gen).degree != degree) continue;
    if (!im.reduced[k].empty()) continue;   // paired: dies immediately in the reduction
    if (im.owner[k] >= 0) continue;         // killed by a later column
    std::vector<std::pair<int, Coefficient>> support;
    for (const auto& [p, v] : im.combo[k])
      support.push_back({im.order[p], Coefficient::from_rational(im.cx->ring(), v)});
    basis.push_back(ChainClass(*im.cx, degree, std::move(support)));
  }
  return basis;
}

}  // namespace filtspec
