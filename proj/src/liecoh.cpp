#include "modcoh/liecoh.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace modcoh::liecoh {

namespace {

std::uint64_t mask_of(const std::vector<std::size_t>& idx) {
  std::uint64_t m = 0;
  for (auto i : idx) m |= std::uint64_t{1} << i;
  return m;
}

std::unordered_map<std::uint64_t, std::size_t> rank_table(const std::vector<std::vector<std::size_t>>& basis) {
  std::unordered_map<std::uint64_t, std::size_t> t;
  for (std::size_t r = 0; r < basis.size(); ++r) t.emplace(mask_of(basis[r]), r);
  return t;
}

}  // namespace

std::vector<std::vector<std::size_t>> wedge_basis(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

RationalMatrix ce_differential(const LieAlgebra& g, std::size_t k) {
  const std::size_t n = g.dim();
  if (k > n) throw InvalidArgument("cochain degree " + std::to_string(k) + " exceeds algebra dimension " +
                                   std::to_string(n));
  if (n > 64) throw InvalidArgument("algebras above dimension 64 are not supported");
  const auto cols = wedge_basis(n, k);
  const auto rows = wedge_basis(n, k + 1);
  const auto col_index = rank_table(cols);
  RationalMatrix d(rows.size(), cols.size());
  std::vector<std::size_t> rest;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& J = rows[r];
    for (std::size_t a = 0; a < J.size(); ++a)
      for (std::size_t b = a + 1; b < J.size(); ++b) {
        rest.clear();
        for (std::size_t t = 0; t < J.size(); ++t)
          if (t != a && t != b) rest.push_back(J[t]);
        const std::uint64_t rest_mask = mask_of(rest);
        const int pair_sign = ((a + b) % 2 == 0) ? 1 : -1;
        for (std::size_t l = 0; l < n; ++l) {
          const Rational& c = g.constant(J[a], J[b], l);
          if (sgn(c) == 0 || (rest_mask >> l) & 1u) continue;
          // e^I(x_l, x_rest) with I = rest + {l}: sign of moving l into place.
          const std::size_t below = static_cast<std::size_t>(
              std::count_if(rest.begin(), rest.end(), [l](std::size_t v) { return v < l; }));
          const int sign = pair_sign * ((below % 2 == 0) ? 1 : -1);
          const std::size_t col = col_index.at(rest_mask | (std::uint64_t{1} << l));
          if (sign > 0)
            d(r, col) += c;
          else
            d(r, col) -= c;
        }
      }
  }
  return d;
}

CEComplex ce_complex(const LieAlgebra& g, std::size_t max_degree) {
  CEComplex cx{g, {}, {}};
  const std::size_t top = std::min(max_degree, g.dim());
  if (max_degree > 3) {
    std::size_t largest = 0;
    for (std::size_t k = 0; k <= top; ++k) largest = std::max(largest, wedge_basis(g.dim(), k).size());
    cx.warnings.push_back("building differentials up to degree " + std::to_string(top) +
                          "; largest cochain space has dimension " + std::to_string(largest));
  }
  for (std::size_t k = 0; k <= top; ++k) cx.differentials.push_back(ce_differential(g, k));
  return cx;
}

CohomologyDims lie_cohomology(const LieAlgebra& g, std::size_t k) {
  if (k > g.dim()) throw InvalidArgument("cochain degree " + std::to_string(k) + " exceeds algebra dimension " +
                                         std::to_string(g.dim()));
  const std::size_t cochains = wedge_basis(g.dim(), k).size();
  const std::size_t rank_k = exact::rank(ce_differential(g, k));
  const std::size_t rank_prev = k == 0 ? 0 : exact::rank(ce_differential(g, k - 1));
  const std::size_t z = cochains - rank_k;
  return {k, z, rank_prev, z - rank_prev};
}

std::size_t lie_cohomology_dim(const LieAlgebra& g, std::size_t k) { return lie_cohomology(g, k).dim_h; }

// ---------------------------------------------------------------------------

LieCochain2::LieCochain2(LieAlgebra g, RationalVector coeffs) : g_(std::move(g)), coeffs_(std::move(coeffs)) {
  const std::size_t n = g_.dim();
  if (coeffs_.size() != n * (n - 1) / 2) throw InvalidArgument("2-cochain needs dim*(dim-1)/2 coefficients");
}

LieCochain2 LieCochain2::zero(const LieAlgebra& g) {
  return LieCochain2(g, RationalVector(g.dim() * (g.dim() - 1) / 2));
}

namespace {
std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  // lexicographic rank of (i, j), i < j
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}
}  // namespace

LieCochain2 LieCochain2::from_pairs(const LieAlgebra& g,
                                    const std::vector<std::pair<std::array<std::size_t, 2>, Rational>>& values) {
  LieCochain2 w = zero(g);
  for (const auto& [ij, v] : values) {
    auto [i, j] = ij;
    if (i >= g.dim() || j >= g.dim() || i == j) throw InvalidArgument("invalid 2-cochain index pair");
    if (i < j)
      w.coeffs_[pair_index(g.dim(), i, j)] += v;
    else
      w.coeffs_[pair_index(g.dim(), j, i)] -= v;
  }
  return w;
}

Rational LieCochain2::operator()(std::size_t i, std::size_t j) const {
  if (i == j) return 0;
  if (i < j) return coeffs_[pair_index(g_.dim(), i, j)];
  return -coeffs_[pair_index(g_.dim(), j, i)];
}

namespace {

std::optional<std::array<std::size_t, 3>> first_violation(const LieCochain2& w) {
  const LieAlgebra& g = w.algebra();
  if (g.dim() < 3) return std::nullopt;
  const RationalVector dw = ce_differential(g, 2) * w.coeffs();
  const auto triples = wedge_basis(g.dim(), 3);
  for (std::size_t r = 0; r < dw.size(); ++r)
    if (sgn(dw[r]) != 0) return std::array<std::size_t, 3>{triples[r][0], triples[r][1], triples[r][2]};
  return std::nullopt;
}

}  // namespace

bool is_closed(const LieCochain2& w) { return !first_violation(w).has_value(); }

LieAlgebra lie_central_extension_unchecked(const LieAlgebra& g, const LieCochain2& w) {
  if (!w.algebra().same_as(g)) throw InvalidArgument("cochain belongs to a different algebra");
  const std::size_t n = g.dim();
  const std::size_t m = n + 1;
  std::vector<std::string> labels = g.labels();
  std::string z = "z";
  while (g.index_of(z)) z += "'";
  labels.push_back(z);
  std::vector<Rational> c(m * m * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) c[(i * m + j) * m + k] = g.constant(i, j, k);
      c[(i * m + j) * m + n] = w(i, j);
    }
  return LieAlgebra::from_constants(g.name() + "+central", std::move(labels), std::move(c));
}

LieAlgebra lie_central_extension(const LieAlgebra& g, const LieCochain2& w) {
  if (const auto t = first_violation(w)) {
    const auto& L = g.labels();
    throw NotClosed(*t, "2-cochain is not closed: (d w)(" + L[(*t)[0]] + ", " + L[(*t)[1]] + ", " +
                            L[(*t)[2]] + ") != 0");
  }
  return lie_central_extension_unchecked(g, w);
}

std::optional<LieSplitting> split_central_extension(const LieAlgebra& g, const LieCochain2& w) {
  const LieAlgebra ext = lie_central_extension(g, w);
  const auto phi = exact::solve(ce_differential(g, 1), w.coeffs());
  if (!phi) return std::nullopt;
  const std::size_t n = g.dim();
  // x'_i = x_i - phi_i z must satisfy [x'_i, x'_j] = sum_k c_ijk x'_k.
  auto primed = [&](std::size_t i) {
    RationalVector v(n + 1);
    v[i] = 1;
    v[n] = -(*phi)[i];
    return lie::LieElement(ext, std::move(v));
  };
  bool ok = true;
  for (std::size_t i = 0; i < n && ok; ++i)
    for (std::size_t j = i + 1; j < n && ok; ++j) {
      lie::LieElement expect = lie::LieElement::zero(ext);
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(g.constant(i, j, k)) != 0) expect = expect + primed(k) * g.constant(i, j, k);
      ok = lie::bracket(primed(i), primed(j)) == expect;
    }
  return LieSplitting{*phi, ok};
}

}  // namespace modcoh::liecoh
