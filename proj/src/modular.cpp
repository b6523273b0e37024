#include "modcoh/modular.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

namespace modcoh::modular {

using cd = std::complex<double>;

namespace {

double hs_norm(const Matrix& x) { return x.norm(); }

cd hs_inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace(); }

void require_square(const Matrix& x, std::size_t d) {
  if (x.rows() != x.cols()) throw InvalidArgument("algebra elements must be square matrices");
  if (static_cast<std::size_t>(x.rows()) != d) throw InvalidArgument("algebra elements have mismatched sizes");
}

// Orthonormal basis under the Hilbert-Schmidt pairing, grown one vector at a
// time with two passes of Gram-Schmidt.
class HsBasis {
 public:
  explicit HsBasis(double tol) : tol_(tol) {}

  Matrix residual(const Matrix& x) const {
    Matrix r = x;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis_) r -= hs_inner(b, r) * b;
    return r;
  }

  bool insert(const Matrix& x) {
    const double scale = std::max(1.0, hs_norm(x));
    Matrix r = residual(x);
    const double n = hs_norm(r);
    if (n <= tol_ * scale) return false;
    basis_.push_back(r / n);
    return true;
  }

  const std::vector<Matrix>& basis() const { return basis_; }

 private:
  double tol_;
  std::vector<Matrix> basis_;
};

}  // namespace

MatrixAlgebra MatrixAlgebra::from_spanning(std::size_t d, const std::vector<Matrix>& spanning, double tol) {
  HsBasis hb(tol);
  for (const auto& x : spanning) {
    require_square(x, d);
    hb.insert(x);
  }
  MatrixAlgebra m;
  m.d_ = d;
  m.basis_ = hb.basis();
  const double check = std::max(tol, kDefaultTolerance);
  m.unital_ = m.contains(Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)), check);
  m.star_closed_ = std::all_of(m.basis_.begin(), m.basis_.end(),
                               [&](const Matrix& b) { return m.contains(b.adjoint(), check); });
  m.product_closed_ = true;
  for (const auto& a : m.basis_)
    for (const auto& b : m.basis_)
      if (m.product_closed_ && !m.contains(a * b, check)) m.product_closed_ = false;
  return m;
}

double MatrixAlgebra::distance(const Matrix& x) const {
  require_square(x, d_);
  Matrix r = x;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis_) r -= hs_inner(b, r) * b;
  return hs_norm(r);
}

MatrixAlgebra algebra_closure(const std::vector<Matrix>& generators, double tol) {
  if (generators.empty()) throw InvalidArgument("algebra closure needs at least one generator");
  const auto d = static_cast<std::size_t>(generators.front().rows());
  for (const auto& g : generators) require_square(g, d);
  const auto n = static_cast<Eigen::Index>(d);
  HsBasis hb(tol);
  hb.insert(Matrix::Identity(n, n));
  for (const auto& g : generators) {
    hb.insert(g);
    hb.insert(g.adjoint());
  }
  std::size_t done = 0;
  while (done < hb.basis().size()) {
    // products of each new element with everything found so far
    const Matrix x = hb.basis()[done];
    for (std::size_t j = 0; j <= done; ++j) {
      const Matrix y = hb.basis()[j];
      hb.insert(x * y);
      hb.insert(y * x);
    }
    hb.insert(x.adjoint());
    ++done;
  }
  return MatrixAlgebra::from_spanning(d, hb.basis(), tol);
}

// ---------------------------------------------------------------------------
// Exact closure

ExactComplexMatrix ExactComplexMatrix::zero(std::size_t n) {
  return ExactComplexMatrix{n, std::vector<exact::Rational>(n * n), std::vector<exact::Rational>(n * n)};
}

ExactComplexMatrix ExactComplexMatrix::identity(std::size_t n) {
  auto m = zero(n);
  for (std::size_t i = 0; i < n; ++i) m.re[i * n + i] = 1;
  return m;
}

ExactComplexMatrix ExactComplexMatrix::adjoint() const {
  auto m = zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m.re[j * n + i] = re[i * n + j];
      m.im[j * n + i] = -im[i * n + j];
    }
  return m;
}

ExactComplexMatrix ExactComplexMatrix::operator*(const ExactComplexMatrix& o) const {
  if (o.n != n) throw InvalidArgument("exact matrices have mismatched sizes");
  auto m = zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const auto& ar = re[i * n + k];
      const auto& ai = im[i * n + k];
      if (sgn(ar) == 0 && sgn(ai) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& br = o.re[k * n + j];
        const auto& bi = o.im[k * n + j];
        m.re[i * n + j] += ar * br - ai * bi;
        m.im[i * n + j] += ar * bi + ai * br;
      }
    }
  return m;
}

Matrix ExactComplexMatrix::to_double() const {
  const auto N = static_cast<Eigen::Index>(n);
  Matrix m(N, N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cd(re[i * n + j].get_d(), im[i * n + j].get_d());
  return m;
}

namespace {

// Incrementally reduced set of rational row vectors.
class RationalSpan {
 public:
  bool insert(exact::RationalVector v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto& f = v[pivots_[r]];
      if (sgn(f) == 0) continue;
      const exact::Rational c = f;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (sgn(rows_[r][k]) != 0) v[k] -= c * rows_[r][k];
    }
    std::size_t p = 0;
    while (p < v.size() && sgn(v[p]) == 0) ++p;
    if (p == v.size()) return false;
    const exact::Rational inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    for (auto& row : rows_) {
      const exact::Rational c = row[p];
      if (sgn(c) == 0) continue;
      for (std::size_t k = 0; k < v.size(); ++k)
        if (sgn(v[k]) != 0) row[k] -= c * v[k];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }
  std::size_t dim() const { return rows_.size(); }

 private:
  std::vector<exact::RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

std::size_t exact_closure_dimension(const std::vector<ExactComplexMatrix>& generators) {
  if (generators.empty()) throw InvalidArgument("algebra closure needs at least one generator");
  const std::size_t n = generators.front().n;
  for (const auto& g : generators)
    if (g.n != n || g.re.size() != n * n || g.im.size() != n * n)
      throw InvalidArgument("exact matrices have mismatched sizes");
  // complex span of S = real span of {v, iv}; complex dimension = real rank / 2
  RationalSpan span;
  std::vector<ExactComplexMatrix> basis;
  auto try_insert = [&](const ExactComplexMatrix& m) {
    exact::RationalVector v(2 * n * n), iv(2 * n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
      v[k] = m.re[k];
      v[n * n + k] = m.im[k];
      iv[k] = -m.im[k];
      iv[n * n + k] = m.re[k];
    }
    if (!span.insert(std::move(v))) return;
    span.insert(std::move(iv));
    basis.push_back(m);
  };
  try_insert(ExactComplexMatrix::identity(n));
  for (const auto& g : generators) {
    try_insert(g);
    try_insert(g.adjoint());
  }
  for (std::size_t done = 0; done < basis.size(); ++done) {
    const ExactComplexMatrix x = basis[done];
    for (std::size_t j = 0; j <= done; ++j) {
      const ExactComplexMatrix y = basis[j];
      try_insert(x * y);
      try_insert(y * x);
    }
    try_insert(x.adjoint());
  }
  return span.dim() / 2;
}

// ---------------------------------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

MatrixAlgebra commutant(const MatrixAlgebra& m, double tol) {
  const auto d = static_cast<Eigen::Index>(m.ambient_dim());
  const Matrix id = Matrix::Identity(d, d);
  Matrix gram = Matrix::Zero(d * d, d * d);
  for (const auto& b : m.basis()) {
    // column-major vec: vec(x b) = (b^T (x) 1) vec(x), vec(b x) = (1 (x) b) vec(x)
    const Matrix l = kron(b.transpose(), id) - kron(id, b);
    gram += l.adjoint() * l;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  std::vector<Matrix> spanning;
  // eigenvalues are sums of squared commutator norms
  const double cutoff = std::max(tol, 1e-12) * 100;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    if (es.eigenvalues()(k) > cutoff) continue;
    const Vector v = es.eigenvectors().col(k);
    spanning.push_back(Eigen::Map<const Matrix>(v.data(), d, d));
  }
  return MatrixAlgebra::from_spanning(m.ambient_dim(), spanning, 1e-12);
}

namespace {

Matrix orbit_matrix(const MatrixAlgebra& m, const Vector& omega) {
  if (static_cast<std::size_t>(omega.size()) != m.ambient_dim())
    throw InvalidArgument("state vector has the wrong length");
  Matrix k(omega.size(), static_cast<Eigen::Index>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i) k.col(static_cast<Eigen::Index>(i)) = m.basis()[i] * omega;
  return k;
}

std::size_t numeric_rank(const Eigen::JacobiSVD<Matrix>& svd, double tol) {
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double cutoff = tol * std::max(1.0, s(0));
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > cutoff;
  return r;
}

}  // namespace

bool is_cyclic(const MatrixAlgebra& m, const Vector& omega, double tol) {
  Eigen::JacobiSVD<Matrix> svd(orbit_matrix(m, omega));
  return numeric_rank(svd, tol) == m.ambient_dim();
}

SeparatingCheck separating_check(const MatrixAlgebra& m, const Vector& omega, double tol) {
  const Matrix k = orbit_matrix(m, omega);
  // Full V so that null vectors are available when dim M exceeds d.
  Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeFullV);
  const std::size_t r = numeric_rank(svd, tol);
  SeparatingCheck out;
  const bool direct = r == m.dim();
  const bool via_commutant = is_cyclic(commutant(m, tol), omega, tol);
  if (direct != via_commutant) throw std::logic_error("separating tests disagree");
  out.separating = direct;
  if (!direct) {
    const Vector c = svd.matrixV().col(static_cast<Eigen::Index>(m.dim()) - 1);
    Matrix x = Matrix::Zero(omega.size(), omega.size());
    for (std::size_t i = 0; i < m.dim(); ++i) x += c(static_cast<Eigen::Index>(i)) * m.basis()[i];
    // fix the phase so the largest entry is real and positive
    Eigen::Index bi = 0, bj = 0;
    x.cwiseAbs().maxCoeff(&bi, &bj);
    x *= std::abs(x(bi, bj)) / x(bi, bj);
    out.annihilator = x / x.norm();
  }
  return out;
}

bool is_separating(const MatrixAlgebra& m, const Vector& omega, double tol) {
  return separating_check(m, omega, tol).separating;
}

// ---------------------------------------------------------------------------

namespace {

Matrix hermitian_function(const Matrix& h, const std::function<cd(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXcd fx(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < fx.size(); ++i) fx(i) = f(es.eigenvalues()(i));
  return es.eigenvectors() * fx.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Matrix ModularTriple::delta_it(double t) const {
  return hermitian_function(delta, [t](double l) { return std::exp(cd(0, t * std::log(l))); });
}

Matrix ModularTriple::delta_power(double exponent) const {
  return hermitian_function(delta, [exponent](double l) { return cd(std::pow(l, exponent), 0); });
}

std::vector<double> ModularTriple::spectrum() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(delta, Eigen::EigenvaluesOnly);
  std::vector<double> s(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(s.rbegin(), s.rend());
  return s;
}

ModularTriple tomita(const MatrixAlgebra& m, const Vector& omega, double tol) {
  if (std::abs(omega.norm() - 1) > 1e-12) throw InvalidArgument("state vector must have unit norm");
  const auto sep = separating_check(m, omega, tol);
  if (!sep.separating)
    throw NotCyclicSeparating("separating", sep.annihilator, "state is not separating: a nonzero element annihilates it");
  if (!is_cyclic(m, omega, tol))
    throw NotCyclicSeparating("cyclic", std::nullopt, "state is not cyclic for the algebra");
  const Eigen::Index d = omega.size();
  Matrix x(d, d), y(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    x.col(i) = m.basis()[static_cast<std::size_t>(i)] * omega;
    y.col(i) = m.basis()[static_cast<std::size_t>(i)].adjoint() * omega;
  }
  Eigen::JacobiSVD<Matrix> svd(x);
  const auto& sv = svd.singularValues();
  ModularTriple t;
  t.omega = omega;
  t.condition = sv(0) / sv(sv.size() - 1);
  // S v = A conj(v) with A conj(x_i Omega) = x_i* Omega
  const Matrix a = y * x.conjugate().inverse();
  t.s = Antilinear{a};
  Matrix delta = a.transpose() * a.conjugate();
  t.delta = (delta + delta.adjoint()) / 2.0;
  t.j = Antilinear{a * t.delta_power(-0.5).conjugate()};
  return t;
}

double TripleDefects::max() const {
  return std::max({s_action, polar, j_squared, j_delta_j, delta_omega, j_omega});
}

double operator_norm(const Matrix& x) {
  if (x.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

TripleDefects triple_defects(const ModularTriple& t, const MatrixAlgebra& m) {
  TripleDefects d;
  const Eigen::Index n = t.omega.size();
  const Matrix id = Matrix::Identity(n, n);
  for (const auto& b : m.basis())
    d.s_action = std::max(d.s_action, (t.s.apply(b * t.omega) - b.adjoint() * t.omega).norm());
  d.polar = operator_norm(t.s.unitary - t.j.unitary * t.delta_power(0.5).conjugate());
  d.j_squared = operator_norm(t.j.unitary * t.j.unitary.conjugate() - id);
  d.j_delta_j = operator_norm(t.j.conjugate(t.delta) - t.delta_power(-1));
  d.delta_omega = (t.delta * t.omega - t.omega).norm();
  d.j_omega = (t.j.apply(t.omega) - t.omega).norm();
  return d;
}

double modular_flow_defect(const Matrix& delta, const MatrixAlgebra& m, const std::vector<double>& ts) {
  double worst = 0;
  for (double t : ts) {
    const Matrix u = hermitian_function(delta, [t](double l) { return std::exp(cd(0, t * std::log(l))); });
    const Matrix uinv = u.adjoint();
    for (const auto& b : m.basis()) worst = std::max(worst, m.distance(u * b * uinv));
  }
  return worst;
}

double modular_flow_defect(const ModularTriple& t, const MatrixAlgebra& m, const std::vector<double>& ts) {
  return modular_flow_defect(t.delta, m, ts);
}

double kms_defect(const MatrixAlgebra& m, const Vector& omega, const Matrix& delta, std::size_t samples,
                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_element = [&] {
    Matrix x = Matrix::Zero(omega.size(), omega.size());
    for (const auto& b : m.basis()) {
      const double re = normal(rng);
      const double im = normal(rng);
      x += cd(re, im) * b;
    }
    return Matrix(x / x.norm());
  };
  double worst = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const Matrix x = random_element();
    const Matrix y = random_element();
    const cd lhs = omega.dot(x * delta * y * omega);
    const cd rhs = omega.dot(y * x * omega);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double kms_defect(const MatrixAlgebra& m, const Vector& omega, std::size_t samples, std::uint64_t seed) {
  return kms_defect(m, omega, tomita(m, omega).delta, samples, seed);
}

MatrixAlgebra reflect(const ModularTriple& t, const MatrixAlgebra& m) {
  std::vector<Matrix> images;
  for (const auto& b : m.basis()) images.push_back(t.j.conjugate(b));
  return MatrixAlgebra::from_spanning(m.ambient_dim(), images);
}

double subspace_distance(const MatrixAlgebra& a, const MatrixAlgebra& b) {
  double worst = 0;
  for (const auto& x : a.basis()) worst = std::max(worst, b.distance(x));
  for (const auto& x : b.basis()) worst = std::max(worst, a.distance(x));
  return worst;
}

Matrix swap_top_eigenvalues(const Matrix& delta) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(delta);
  Eigen::VectorXd l = es.eigenvalues();  // ascending
  const Eigen::Index n = l.size();
  if (n >= 2) std::swap(l(n - 1), l(n - 2));
  return es.eigenvectors() * l.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

MatrixAlgebra m2_tensor_one() {
  std::vector<Matrix> basis;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Matrix e = Matrix::Zero(2, 2);
      e(i, j) = 1;
      basis.push_back(kron(e, Matrix::Identity(2, 2)));
    }
  return MatrixAlgebra::from_spanning(4, basis);
}

MatrixAlgebra one_tensor_m2() {
  std::vector<Matrix> basis;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Matrix e = Matrix::Zero(2, 2);
      e(i, j) = 1;
      basis.push_back(kron(Matrix::Identity(2, 2), e));
    }
  return MatrixAlgebra::from_spanning(4, basis);
}

Vector entangled_state(double p) {
  if (!(p >= 0 && p <= 1)) throw InvalidArgument("weight p must lie in [0, 1]");
  Vector v = Vector::Zero(4);
  v(0) = std::sqrt(p);
  v(3) = std::sqrt(1 - p);
  return v;
}

}  // namespace modcoh::modular
