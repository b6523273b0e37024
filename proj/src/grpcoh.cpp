#include "modcoh/grpcoh.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "modcoh/parallel.hpp"

namespace modcoh::group {

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup FiniteGroup::from_table(std::string name, std::vector<std::vector<std::size_t>> rows,
                                    std::size_t identity) {
  const std::size_t n = rows.size();
  if (n == 0) throw InvalidArgument("group table is empty");
  if (identity >= n) throw InvalidArgument("identity index out of range");
  std::vector<std::size_t> t;
  t.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (rows[a].size() != n) throw InvalidArgument("group table row " + std::to_string(a) + " has wrong length");
    std::vector<bool> seen(n, false);
    for (auto v : rows[a]) {
      if (v >= n) throw InvalidArgument("group table entry out of range");
      if (seen[v]) throw MathError("group table row " + std::to_string(a) + " repeats an element");
      seen[v] = true;
      t.push_back(v);
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<bool> seen(n, false);
    for (std::size_t a = 0; a < n; ++a) {
      if (seen[t[a * n + b]]) throw MathError("group table column " + std::to_string(b) + " repeats an element");
      seen[t[a * n + b]] = true;
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    if (t[identity * n + a] != a || t[a * n + identity] != a)
      throw MathError("element " + std::to_string(identity) + " is not a two-sided identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t[t[a * n + b] * n + c] != t[a * n + t[b * n + c]])
          throw MathError("associativity fails on (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                          std::to_string(c) + ")");
  std::vector<std::size_t> inv(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (t[a * n + b] == identity) inv[a] = b;
  return FiniteGroup(std::make_shared<const Data>(Data{std::move(name), n, std::move(t), identity, std::move(inv)}));
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t x = a; x != identity(); x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = a + 1; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::same_as(const FiniteGroup& other) const {
  return d_ == other.d_ || (d_->n == other.d_->n && d_->identity == other.d_->identity && d_->table == other.d_->table);
}

std::vector<std::vector<std::size_t>> FiniteGroup::table() const {
  std::vector<std::vector<std::size_t>> out(order());
  for (std::size_t a = 0; a < order(); ++a)
    out[a].assign(d_->table.begin() + a * order(), d_->table.begin() + (a + 1) * order());
  return out;
}

FiniteGroup FiniteGroup::subgroup(const std::vector<std::size_t>& elements, std::string name) const {
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t k = 0; k < elements.size(); ++k) pos[elements[k]] = k;
  if (!pos.count(identity())) throw InvalidArgument("subgroup must contain the identity");
  std::vector<std::vector<std::size_t>> rows(elements.size(), std::vector<std::size_t>(elements.size()));
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j) {
      auto it = pos.find(mul(elements[i], elements[j]));
      if (it == pos.end()) throw MathError("subset is not closed under multiplication");
      rows[i][j] = it->second;
    }
  return from_table(std::move(name), std::move(rows), pos[identity()]);
}

std::vector<std::size_t> FiniteGroup::generators() const {
  std::vector<std::size_t> gens;
  std::vector<bool> in(order(), false);
  in[identity()] = true;
  std::vector<std::size_t> members{identity()};
  for (std::size_t g = 0; g < order(); ++g) {
    if (in[g]) continue;
    gens.push_back(g);
    // close members under right multiplication by all generators
    std::vector<std::size_t> queue = members;
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (auto s : gens) {
        const std::size_t y = mul(queue[qi], s);
        if (!in[y]) {
          in[y] = true;
          queue.push_back(y);
        }
      }
    members = queue;
  }
  return gens;
}

FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw InvalidArgument("cyclic group order must be positive");
  std::vector<std::vector<std::size_t>> rows(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) rows[a][b] = (a + b) % n;
  return FiniteGroup::from_table("z" + std::to_string(n), std::move(rows), 0);
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order(), m = h.order();
  std::vector<std::vector<std::size_t>> rows(n * m, std::vector<std::size_t>(n * m));
  for (std::size_t a = 0; a < n * m; ++a)
    for (std::size_t b = 0; b < n * m; ++b)
      rows[a][b] = g.mul(a / m, b / m) * m + h.mul(a % m, b % m);
  return FiniteGroup::from_table(g.name() + "x" + h.name(), std::move(rows), g.identity() * m + h.identity());
}

namespace {

FiniteGroup permutation_group(std::string name, std::size_t k, bool even_only) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) inversions += p[i] > p[j];
    if (!even_only || inversions % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const std::size_t n = perms.size();
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[perms[i]] = i;
  std::vector<std::vector<std::size_t>> rows(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::size_t> c(k);
      for (std::size_t x = 0; x < k; ++x) c[x] = perms[a][perms[b][x]];  // a after b
      rows[a][b] = index.at(c);
    }
  return FiniteGroup::from_table(std::move(name), std::move(rows), 0);
}

}  // namespace

FiniteGroup symmetric_group_3() { return permutation_group("s3", 3, false); }
FiniteGroup alternating_group_4() { return permutation_group("a4", 4, true); }

FiniteGroup quaternion_group() {
  // Index 2u + s is (-1)^s times unit u, units ordered 1, i, j, k.
  // unit products: unit_mul[u][v] = (sign, unit)
  static constexpr std::array<std::array<std::pair<int, int>, 4>, 4> unit_mul{{
      {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
      {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
      {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
      {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
  }};
  std::vector<std::vector<std::size_t>> rows(8, std::vector<std::size_t>(8));
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      const auto [sign, unit] = unit_mul[a / 2][b / 2];
      const bool negative = ((a % 2) ^ (b % 2) ^ (sign < 0 ? 1 : 0)) != 0;
      rows[a][b] = static_cast<std::size_t>(unit) * 2 + (negative ? 1 : 0);
    }
  return FiniteGroup::from_table("q8", std::move(rows), 0);
}

FiniteGroup builtin_group(const std::string& raw) {
  std::string name;
  for (char c : raw) name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (name == "klein4" || name == "v4") {
    auto g = direct_product(cyclic_group(2), cyclic_group(2));
    return FiniteGroup::from_table("klein4", g.table(), g.identity());
  }
  if (name == "s3") return symmetric_group_3();
  if (name == "q8") return quaternion_group();
  if (name == "a4") return alternating_group_4();
  const auto x = name.find('x');
  if (x != std::string::npos && x > 0 && x + 1 < name.size())
    return direct_product(builtin_group(name.substr(0, x)), builtin_group(name.substr(x + 1)));
  if (name.size() >= 2 && name[0] == 'z' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
      name.size() <= 6) {
    const auto n = std::stoul(name.substr(1));
    if (n >= 1) return cyclic_group(n);
  }
  throw InvalidArgument("unknown group '" + raw + "'");
}

// ---------------------------------------------------------------------------
// AbelianCoefficients

AbelianCoefficients::AbelianCoefficients(std::vector<std::uint32_t> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw InvalidArgument("coefficient group needs at least one cyclic factor");
  double total = 1;
  for (auto m : orders_) {
    if (m < 2) throw InvalidArgument("cyclic factor orders must be at least 2");
    total *= m;
  }
  if (total > 1u << 24) throw InvalidArgument("coefficient group too large");
  radix_.resize(orders_.size());
  std::uint32_t place = 1;
  for (std::size_t i = orders_.size(); i-- > 0;) {
    radix_[i] = place;
    place *= orders_[i];
  }
  size_ = place;
}

AbelianCoefficients AbelianCoefficients::parse(const std::string& raw) {
  std::string spec;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c)))
      spec.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (spec == "klein4" || spec == "v4") return AbelianCoefficients({2, 2});
  std::vector<std::uint32_t> orders;
  const char sep = spec.find(',') != std::string::npos ? ',' : 'x';
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, sep)) {
    if (!part.empty() && part[0] == 'z') part.erase(0, 1);
    if (part.empty() || part.size() > 8 ||
        !std::all_of(part.begin(), part.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw InvalidArgument("malformed coefficient group '" + raw + "'");
    orders.push_back(static_cast<std::uint32_t>(std::stoul(part)));
  }
  return AbelianCoefficients(std::move(orders));
}

std::string AbelianCoefficients::name() const {
  std::string s;
  for (std::size_t i = 0; i < orders_.size(); ++i) s += (i ? "xZ" : "Z") + std::to_string(orders_[i]);
  return s;
}

std::uint32_t AbelianCoefficients::component(std::uint32_t a, std::size_t i) const {
  return (a / radix_[i]) % orders_[i];
}

std::uint32_t AbelianCoefficients::encode(std::span<const std::int64_t> comps) const {
  if (comps.size() != orders_.size()) throw InvalidArgument("component count mismatch");
  std::uint32_t a = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::int64_t r = comps[i] % static_cast<std::int64_t>(orders_[i]);
    if (r < 0) r += orders_[i];
    a += static_cast<std::uint32_t>(r) * radix_[i];
  }
  return a;
}

std::uint32_t AbelianCoefficients::add(std::uint32_t a, std::uint32_t b) const {
  if (orders_.size() == 1) return (a + b) % orders_[0];
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i)
    out += ((component(a, i) + component(b, i)) % orders_[i]) * radix_[i];
  return out;
}

std::uint32_t AbelianCoefficients::neg(std::uint32_t a) const {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) out += ((orders_[i] - component(a, i)) % orders_[i]) * radix_[i];
  return out;
}

std::uint32_t AbelianCoefficients::scale(std::int64_t k, std::uint32_t a) const {
  std::vector<std::int64_t> comps(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) comps[i] = k % orders_[i] * component(a, i);
  return encode(comps);
}

FiniteGroup AbelianCoefficients::as_group() const {
  std::vector<std::vector<std::size_t>> rows(size_, std::vector<std::size_t>(size_));
  for (std::uint32_t a = 0; a < size_; ++a)
    for (std::uint32_t b = 0; b < size_; ++b) rows[a][b] = add(a, b);
  return FiniteGroup::from_table(name(), std::move(rows), 0);
}

// ---------------------------------------------------------------------------
// Cochain

namespace {
std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}
}  // namespace

Cochain::Cochain(FiniteGroup group, AbelianCoefficients coeffs, std::size_t degree)
    : g_(std::move(group)), a_(std::move(coeffs)), n_(degree), values_(ipow(g_.order(), degree), 0) {}

Cochain::Cochain(FiniteGroup group, AbelianCoefficients coeffs, std::size_t degree, std::vector<std::uint32_t> values)
    : g_(std::move(group)), a_(std::move(coeffs)), n_(degree), values_(std::move(values)) {
  if (values_.size() != ipow(g_.order(), degree))
    throw InvalidArgument("cochain table of degree " + std::to_string(degree) + " needs " +
                          std::to_string(ipow(g_.order(), degree)) + " values");
  for (auto v : values_)
    if (v >= a_.size()) throw InvalidArgument("cochain value outside the coefficient group");
}

std::size_t Cochain::index_of(std::span<const std::size_t> args) const {
  if (args.size() != n_) throw InvalidArgument("wrong number of cochain arguments");
  std::size_t idx = 0;
  for (auto p : args) {
    if (p >= g_.order()) throw InvalidArgument("cochain argument out of range");
    idx = idx * g_.order() + p;
  }
  return idx;
}

std::uint32_t Cochain::at(std::size_t p) const {
  const std::array<std::size_t, 1> a{p};
  return at(std::span<const std::size_t>(a));
}
std::uint32_t Cochain::at(std::size_t p, std::size_t q) const {
  const std::array<std::size_t, 2> a{p, q};
  return at(std::span<const std::size_t>(a));
}
std::uint32_t Cochain::at(std::size_t p, std::size_t q, std::size_t r) const {
  const std::array<std::size_t, 3> a{p, q, r};
  return at(std::span<const std::size_t>(a));
}

bool Cochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](std::uint32_t v) { return v == 0; });
}

bool Cochain::is_normalized() const {
  const std::size_t N = g_.order();
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    if (values_[idx] == 0) continue;
    std::size_t rest = idx;
    for (std::size_t k = 0; k < n_; ++k, rest /= N)
      if (rest % N == g_.identity()) return false;
  }
  return true;
}

void Cochain::require_compatible(const Cochain& o) const {
  if (n_ != o.n_ || !g_.same_as(o.g_) || !(a_ == o.a_))
    throw InvalidArgument("cochains differ in degree, group or coefficients");
}

Cochain Cochain::operator+(const Cochain& o) const {
  require_compatible(o);
  Cochain r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = a_.add(values_[i], o.values_[i]);
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const {
  require_compatible(o);
  Cochain r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = a_.sub(values_[i], o.values_[i]);
  return r;
}

Cochain Cochain::operator-() const {
  Cochain r = *this;
  for (auto& v : r.values_) v = a_.neg(v);
  return r;
}

bool operator==(const Cochain& a, const Cochain& b) {
  return a.n_ == b.n_ && a.g_.same_as(b.g_) && a.a_ == b.a_ && a.values_ == b.values_;
}

// ---------------------------------------------------------------------------
// GroupHom

GroupHom::GroupHom(FiniteGroup source, FiniteGroup target, std::vector<std::size_t> images)
    : src_(std::move(source)), dst_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != src_.order()) throw InvalidArgument("homomorphism table has wrong length");
  for (auto v : images_)
    if (v >= dst_.order()) throw InvalidArgument("homomorphism value out of range");
  if (auto bad = first_violation(src_, dst_, images_))
    throw MathError("not a homomorphism: f(" + std::to_string(bad->first) + "*" + std::to_string(bad->second) +
                    ") != f(" + std::to_string(bad->first) + ")*f(" + std::to_string(bad->second) + ")");
}

std::optional<std::pair<std::size_t, std::size_t>> GroupHom::first_violation(const FiniteGroup& s,
                                                                             const FiniteGroup& t,
                                                                             const std::vector<std::size_t>& f) {
  for (std::size_t g = 0; g < s.order(); ++g)
    for (std::size_t h = 0; h < s.order(); ++h)
      if (f[s.mul(g, h)] != t.mul(f[g], f[h])) return std::make_pair(g, h);
  return std::nullopt;
}

bool GroupHom::is_surjective() const {
  std::vector<bool> hit(dst_.order(), false);
  for (auto v : images_) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<std::size_t> GroupHom::kernel() const {
  std::vector<std::size_t> k;
  for (std::size_t g = 0; g < images_.size(); ++g)
    if (images_[g] == dst_.identity()) k.push_back(g);
  return k;
}

// ---------------------------------------------------------------------------
// Coboundary

namespace {

// Calls emit(column, sign) for each term of (d_n e)(tuple) where `tuple` has
// n+1 entries; columns index n-tuples.
template <class Emit>
void coboundary_terms(const FiniteGroup& g, std::span<const std::size_t> tuple, Emit&& emit) {
  const std::size_t n = tuple.size() - 1;
  const std::size_t N = g.order();
  auto col_of = [&](auto&& get, std::size_t len) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < len; ++k) idx = idx * N + get(k);
    return idx;
  };
  // f(p_2 .. p_{n+1})
  emit(col_of([&](std::size_t k) { return tuple[k + 1]; }, n), 1);
  for (std::size_t i = 1; i <= n; ++i) {
    const int sign = (i % 2 == 0) ? 1 : -1;
    // merge positions i-1 and i (0-based)
    emit(col_of(
             [&](std::size_t k) {
               if (k < i - 1) return tuple[k];
               if (k == i - 1) return g.mul(tuple[i - 1], tuple[i]);
               return tuple[k + 1];
             },
             n),
         sign);
  }
  emit(col_of([&](std::size_t k) { return tuple[k]; }, n), ((n + 1) % 2 == 0) ? 1 : -1);
}

std::vector<std::size_t> unrank_tuple(std::size_t idx, std::size_t len, std::size_t N) {
  std::vector<std::size_t> t(len);
  for (std::size_t k = len; k-- > 0;) {
    t[k] = idx % N;
    idx /= N;
  }
  return t;
}

}  // namespace

Cochain coboundary(const Cochain& f) {
  const std::size_t n = f.degree();
  if (n > 2) throw InvalidArgument("coboundary supports degrees 0, 1 and 2, got " + std::to_string(n));
  const FiniteGroup& g = f.group();
  const AbelianCoefficients& a = f.coefficients();
  Cochain out(g, a, n + 1);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const auto tuple = unrank_tuple(idx, n + 1, g.order());
    std::uint32_t acc = 0;
    coboundary_terms(g, tuple, [&](std::size_t col, int sign) {
      acc = sign > 0 ? a.add(acc, f[col]) : a.sub(acc, f[col]);
    });
    out[idx] = acc;
  }
  return out;
}

namespace {

std::vector<std::size_t> normalized_tuples(const FiniteGroup& g, std::size_t len) {
  std::vector<std::size_t> out;
  const std::size_t total = ipow(g.order(), len);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const auto t = unrank_tuple(idx, len, g.order());
    if (std::none_of(t.begin(), t.end(), [&](std::size_t p) { return p == g.identity(); })) out.push_back(idx);
  }
  return out;
}

}  // namespace

exact::IntegerMatrix coboundary_matrix(const FiniteGroup& g, std::size_t n, bool normalized) {
  const std::size_t N = g.order();
  std::vector<std::size_t> rows, cols;
  if (normalized) {
    rows = normalized_tuples(g, n + 1);
    cols = normalized_tuples(g, n);
  } else {
    rows.resize(ipow(N, n + 1));
    cols.resize(ipow(N, n));
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
  }
  std::map<std::size_t, std::size_t> col_pos;
  for (std::size_t j = 0; j < cols.size(); ++j) col_pos[cols[j]] = j;
  exact::IntegerMatrix d(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto tuple = unrank_tuple(rows[r], n + 1, N);
    coboundary_terms(g, tuple, [&](std::size_t col, int sign) {
      auto it = col_pos.find(col);
      if (it == col_pos.end()) return;  // non-normalized column: value is zero
      d(r, it->second) += sign;
    });
  }
  return d;
}

// ---------------------------------------------------------------------------
// Cohomology via linear algebra

Integer CohomologyGroup::order() const {
  Integer o = 1;
  for (const auto& f : invariant_factors) o *= f;
  return o;
}

std::string CohomologyGroup::to_string() const {
  if (invariant_factors.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i)
    s += (i ? " + Z" : "Z") + invariant_factors[i].get_str();
  return s;
}

namespace {

void require_degree(std::size_t n) {
  if (n < 1 || n > 2) throw InvalidArgument("cohomology is computed in degrees 1 and 2, got " + std::to_string(n));
}

Integer gcd_of(const Integer& a, std::uint32_t m) {
  Integer g;
  const Integer mm = m;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), mm.get_mpz_t());
  return g;
}

}  // namespace

CohomologyGroup cohomology_group(const FiniteGroup& p, const AbelianCoefficients& a, std::size_t n,
                                 CohomologyOptions opts) {
  require_degree(n);
  const auto d_prev = coboundary_matrix(p, n - 1, opts.normalized);
  const auto d_cur = coboundary_matrix(p, n, opts.normalized);
  const std::size_t cochains = d_cur.cols();

  bool all_prime = true;
  for (auto m : a.orders()) all_prime = all_prime && exact::is_prime(m);
  if (opts.method == CohomologyMethod::prime_field && !all_prime)
    throw InvalidArgument("prime-field method needs every coefficient factor to be prime");
  const bool use_prime = opts.method == CohomologyMethod::prime_field ||
                         (opts.method == CohomologyMethod::automatic && all_prime);

  std::vector<Integer> cyclic;
  if (use_prime) {
    for (auto m : a.orders()) {
      const std::size_t r_cur = exact::rank(exact::PrimeFieldMatrix::reduce(d_cur, m));
      const std::size_t r_prev = exact::rank(exact::PrimeFieldMatrix::reduce(d_prev, m));
      for (std::size_t k = 0; k < cochains - r_cur - r_prev; ++k) cyclic.emplace_back(m);
    }
  } else {
    // Universal coefficients for the free cochain complex C^*(P, Z):
    // H^n(C (x) Z_m) = H^n(C) (x) Z_m  (+)  Tor(H^{n+1}(C), Z_m).
    const auto s_prev = exact::smith_normal_form(d_prev);
    const auto s_cur = exact::smith_normal_form(d_cur);
    const std::size_t free_rank = cochains - s_cur.rank() - s_prev.rank();
    for (auto m : a.orders()) {
      for (std::size_t k = 0; k < free_rank; ++k) cyclic.emplace_back(m);
      for (const auto& d : s_prev.factors) cyclic.push_back(gcd_of(d, m));
      for (const auto& d : s_cur.factors) cyclic.push_back(gcd_of(d, m));
    }
  }
  return CohomologyGroup{n, exact::invariant_factors(cyclic)};
}

Integer CocycleSpace::order() const {
  Integer o = 1;
  for (const auto& f : invariant_factors) o *= f;
  return o;
}

CocycleSpace cocycle_space(const FiniteGroup& p, const AbelianCoefficients& a, std::size_t n) {
  require_degree(n);
  const auto d = coboundary_matrix(p, n);
  const auto s = exact::smith_normal_form(d, {.left = false, .right = true});
  const auto& v = *s.right;
  CocycleSpace out;
  std::vector<Integer> cyclic;
  for (std::size_t f = 0; f < a.rank(); ++f) {
    const std::uint32_t m = a.orders()[f];
    auto add_generator = [&](std::size_t col, const Integer& scale, const Integer& order) {
      std::vector<std::uint32_t> values(d.cols(), 0);
      std::vector<std::int64_t> comps(a.rank(), 0);
      for (std::size_t i = 0; i < d.cols(); ++i) {
        Integer x = scale * v(i, col);
        mpz_fdiv_r_ui(x.get_mpz_t(), x.get_mpz_t(), m);
        comps[f] = x.get_si();
        values[i] = a.encode(comps);
      }
      out.generators.emplace_back(p, a, n, std::move(values));
      out.generator_orders.push_back(order);
      cyclic.push_back(order);
    };
    for (std::size_t i = 0; i < s.rank(); ++i) {
      const Integer g = gcd_of(s.factors[i], m);
      if (g > 1) add_generator(i, Integer(m) / g, g);
    }
    for (std::size_t i = s.rank(); i < d.cols(); ++i) add_generator(i, 1, Integer(m));
  }
  out.invariant_factors = exact::invariant_factors(cyclic);
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

namespace {

double cochain_count(const FiniteGroup& p, const AbelianCoefficients& a, std::size_t n) {
  return std::pow(static_cast<double>(a.size()), static_cast<double>(ipow(p.order(), n)));
}

Cochain cochain_from_rank(const FiniteGroup& p, const AbelianCoefficients& a, std::size_t n, std::uint64_t r) {
  const std::size_t len = ipow(p.order(), n);
  std::vector<std::uint32_t> values(len);
  for (std::size_t i = len; i-- > 0;) {
    values[i] = static_cast<std::uint32_t>(r % a.size());
    r /= a.size();
  }
  return Cochain(p, a, n, std::move(values));
}

}  // namespace

std::vector<Cochain> enumerate_cochains(const FiniteGroup& p, const AbelianCoefficients& a, std::size_t n,
                                        double limit) {
  const double total = cochain_count(p, a, n);
  if (total > limit) throw SizeLimitExceeded("cochain enumeration", total, limit);
  std::vector<Cochain> out;
  out.reserve(static_cast<std::size_t>(total));
  for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(total); ++r) out.push_back(cochain_from_rank(p, a, n, r));
  return out;
}

std::vector<Cochain> enumerate_cocycles(const FiniteGroup& p, const AbelianCoefficients& a, std::size_t n,
                                        double limit) {
  const double total = cochain_count(p, a, n);
  if (total > limit) throw SizeLimitExceeded("cocycle enumeration", total, limit);
  const auto count = static_cast<std::size_t>(total);
  const unsigned workers = thread_count();
  std::vector<std::vector<Cochain>> parts(std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count))));
  parallel_chunks(
      count,
      [&](unsigned chunk, std::size_t b, std::size_t e) {
        for (std::size_t r = b; r < e; ++r) {
          Cochain f = cochain_from_rank(p, a, n, r);
          if (coboundary(f).is_zero()) parts[chunk].push_back(std::move(f));
        }
      },
      static_cast<unsigned>(parts.size()));
  std::vector<Cochain> out;
  for (auto& part : parts)
    for (auto& f : part) out.push_back(std::move(f));
  return out;
}

CohomologyGroup cohomology_by_enumeration(const FiniteGroup& p, const AbelianCoefficients& a, std::size_t n,
                                          double limit) {
  require_degree(n);
  const auto cocycles = enumerate_cocycles(p, a, n, limit);
  std::set<std::vector<std::uint32_t>> boundaries;
  for (const auto& f : enumerate_cochains(p, a, n - 1, limit)) boundaries.insert(coboundary(f).values());
  const std::size_t h = cocycles.size() / boundaries.size();

  // |H[k]| = #{z : k z in B} / |B| for prime powers k.
  auto torsion = [&](std::uint64_t k) {
    std::size_t c = 0;
    for (const auto& z : cocycles) {
      std::vector<std::uint32_t> kz(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) kz[i] = a.scale(static_cast<std::int64_t>(k), z[i]);
      c += boundaries.count(kz);
    }
    return c / boundaries.size();
  };
  std::vector<Integer> prime_powers;
  std::size_t rest = h;
  for (std::uint64_t q = 2; rest > 1; ++q) {
    if (rest % q != 0) continue;
    while (rest % q == 0) rest /= q;
    // e_j = number of cyclic q-factors of order >= q^j
    std::vector<std::size_t> e;
    std::size_t prev = 1;
    for (std::uint64_t pk = q;; pk *= q) {
      const std::size_t t = torsion(pk);
      std::size_t ratio = t / prev, ej = 0;
      while (ratio > 1) {
        ratio /= q;
        ++ej;
      }
      if (ej == 0) break;
      e.push_back(ej);
      prev = t;
    }
    for (std::size_t j = 0; j < e.size(); ++j) {
      const std::size_t exact_count = e[j] - (j + 1 < e.size() ? e[j + 1] : 0);
      Integer order = 1;
      for (std::size_t k = 0; k <= j; ++k) order *= static_cast<unsigned long>(q);
      for (std::size_t c = 0; c < exact_count; ++c) prime_powers.push_back(order);
    }
  }
  return CohomologyGroup{n, exact::invariant_factors(prime_powers)};
}

// ---------------------------------------------------------------------------
// Solving d phi = c

CoboundarySolver::CoboundarySolver(FiniteGroup p, AbelianCoefficients a, std::size_t n)
    : p_(std::move(p)), a_(std::move(a)), n_(n) {
  if (n < 1 || n > 3) throw InvalidArgument("coboundary solver supports target degrees 1 to 3");
  smith_ = exact::smith_normal_form(coboundary_matrix(p_, n - 1), {.left = true, .right = true});
}

namespace {

std::vector<Integer> left_apply(const exact::IntegerMatrix& u, const Cochain& c, std::size_t factor,
                                const AbelianCoefficients& a) {
  const std::uint32_t m = a.orders()[factor];
  std::vector<Integer> y(u.rows());
  for (std::size_t i = 0; i < u.rows(); ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < u.cols(); ++j) {
      const std::uint32_t cj = a.component(c[j], factor);
      if (cj != 0 && sgn(u(i, j)) != 0) s += u(i, j) * cj;
    }
    mpz_fdiv_r_ui(s.get_mpz_t(), s.get_mpz_t(), m);
    y[i] = s;
  }
  return y;
}

}  // namespace

std::vector<Integer> CoboundarySolver::class_coordinates(const Cochain& c) const {
  if (c.degree() != n_ || !c.group().same_as(p_) || !(c.coefficients() == a_))
    throw InvalidArgument("cochain does not match the solver's group, coefficients or degree");
  std::vector<Integer> coords;
  for (std::size_t f = 0; f < a_.rank(); ++f) {
    const std::uint32_t m = a_.orders()[f];
    const auto y = left_apply(*smith_.left, c, f, a_);
    for (std::size_t i = 0; i < y.size(); ++i) {
      const Integer mod = i < smith_.rank() ? gcd_of(smith_.factors[i], m) : Integer(m);
      if (mod == 1) continue;
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), mod.get_mpz_t());
      coords.push_back(r);
    }
  }
  return coords;
}

std::optional<Cochain> CoboundarySolver::solve(const Cochain& c) const {
  if (c.degree() != n_ || !c.group().same_as(p_) || !(c.coefficients() == a_))
    throw InvalidArgument("cochain does not match the solver's group, coefficients or degree");
  const auto& v = *smith_.right;
  const std::size_t cols = v.rows();
  std::vector<std::vector<std::int64_t>> comps(cols, std::vector<std::int64_t>(a_.rank(), 0));
  for (std::size_t f = 0; f < a_.rank(); ++f) {
    const std::uint32_t m = a_.orders()[f];
    const auto y = left_apply(*smith_.left, c, f, a_);
    std::vector<Integer> z(cols);
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i >= smith_.rank()) {
        if (sgn(y[i]) != 0) return std::nullopt;
        continue;
      }
      const Integer& d = smith_.factors[i];
      const Integer g = gcd_of(d, m);
      if (!mpz_divisible_p(y[i].get_mpz_t(), g.get_mpz_t())) return std::nullopt;
      const Integer mg = Integer(m) / g;
      Integer dg = d / g, inv;
      mpz_fdiv_r(dg.get_mpz_t(), dg.get_mpz_t(), mg.get_mpz_t());
      if (mg == 1) {
        z[i] = 0;
        continue;
      }
      mpz_invert(inv.get_mpz_t(), dg.get_mpz_t(), mg.get_mpz_t());
      Integer zi = (y[i] / g) * inv;
      mpz_fdiv_r(zi.get_mpz_t(), zi.get_mpz_t(), mg.get_mpz_t());
      z[i] = zi;
    }
    for (std::size_t r = 0; r < cols; ++r) {
      Integer s = 0;
      for (std::size_t i = 0; i < cols; ++i)
        if (sgn(z[i]) != 0 && sgn(v(r, i)) != 0) s += v(r, i) * z[i];
      mpz_fdiv_r_ui(s.get_mpz_t(), s.get_mpz_t(), m);
      comps[r][f] = s.get_si();
    }
  }
  std::vector<std::uint32_t> values(cols);
  for (std::size_t r = 0; r < cols; ++r) values[r] = a_.encode(comps[r]);
  Cochain phi(p_, a_, n_ - 1, std::move(values));
  if (!(coboundary(phi) == c)) throw std::logic_error("coboundary solver produced a wrong preimage");
  return phi;
}

// ---------------------------------------------------------------------------
// Homomorphisms

std::vector<GroupHom> homomorphisms(const FiniteGroup& p, const FiniteGroup& q, double limit) {
  const auto gens = p.generators();
  const double total = std::pow(static_cast<double>(q.order()), static_cast<double>(gens.size()));
  if (total > limit) throw SizeLimitExceeded("homomorphism enumeration", total, limit);
  std::vector<GroupHom> out;
  std::vector<std::size_t> assign(gens.size(), 0);
  const std::size_t none = p.order();
  for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(total); ++r) {
    std::uint64_t x = r;
    for (std::size_t k = gens.size(); k-- > 0;) {
      assign[k] = x % q.order();
      x /= q.order();
    }
    std::vector<std::size_t> img(p.order(), none);
    img[p.identity()] = q.identity();
    std::vector<std::size_t> queue{p.identity()};
    bool ok = true;
    for (std::size_t qi = 0; qi < queue.size() && ok; ++qi)
      for (std::size_t k = 0; k < gens.size() && ok; ++k) {
        const std::size_t y = p.mul(queue[qi], gens[k]);
        const std::size_t iy = q.mul(img[queue[qi]], assign[k]);
        if (img[y] == none) {
          img[y] = iy;
          queue.push_back(y);
        } else if (img[y] != iy) {
          ok = false;
        }
      }
    if (ok && !GroupHom::first_violation(p, q, img)) out.emplace_back(p, q, std::move(img));
  }
  return out;
}

std::vector<GroupHom> hom_group(const FiniteGroup& p, const AbelianCoefficients& a) {
  return homomorphisms(p, a.as_group());
}

Cochain as_cochain(const GroupHom& f, const AbelianCoefficients& a) {
  if (f.target().order() != a.size()) throw InvalidArgument("homomorphism target is not the coefficient group");
  std::vector<std::uint32_t> values(f.images().begin(), f.images().end());
  return Cochain(f.source(), a, 1, std::move(values));
}

Inflation inflation(const GroupHom& sigma, const Cochain& f) {
  if (!sigma.target().same_as(f.group())) throw InvalidArgument("inflation: cochain is not defined on sigma's target");
  const FiniteGroup& e = sigma.source();
  const std::size_t n = f.degree();
  Cochain out(e, f.coefficients(), n);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const auto t = unrank_tuple(idx, n, e.order());
    std::vector<std::size_t> image(n);
    for (std::size_t k = 0; k < n; ++k) image[k] = sigma(t[k]);
    out[idx] = f.at(std::span<const std::size_t>(image));
  }
  Inflation r{std::move(out), sigma.is_surjective(), {}};
  if (!r.surjective) r.warnings.push_back("sigma is not surjective; pullback computed anyway");
  return r;
}

}  // namespace modcoh::group
