#pragma once

// Cohomology of finite groups with coefficients in a finite abelian group
// carrying the trivial action.
//
// An n-cochain is a full table P^n -> A; the tuple (p_1, ..., p_n) sits at
// index p_1 N^{n-1} + ... + p_n. A is written additively and
//   (d_n f)(p_1..p_{n+1}) = f(p_2..p_{n+1})
//                          + sum_{i=1..n} (-1)^i f(.., p_i p_{i+1}, ..)
//                          + (-1)^{n+1} f(p_1..p_n).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modcoh/exactmat.hpp"

namespace modcoh::group {

using exact::Integer;

/// Finite group stored by its full multiplication table. Immutable handle.
class FiniteGroup {
 public:
  /// Validates the table: Latin square, two-sided identity, associativity.
  static FiniteGroup from_table(std::string name, std::vector<std::vector<std::size_t>> table,
                                std::size_t identity);

  const std::string& name() const noexcept { return d_->name; }
  std::size_t order() const noexcept { return d_->n; }
  std::size_t identity() const noexcept { return d_->identity; }
  std::size_t mul(std::size_t a, std::size_t b) const { return d_->table[a * d_->n + b]; }
  std::size_t inverse(std::size_t a) const { return d_->inverse[a]; }
  std::size_t element_order(std::size_t a) const;
  bool is_abelian() const;
  bool same_as(const FiniteGroup& other) const;

  /// Rows of the multiplication table.
  std::vector<std::vector<std::size_t>> table() const;

  /// Subgroup on the listed elements (which must contain the identity and be
  /// closed); element k of the result is elements[k].
  FiniteGroup subgroup(const std::vector<std::size_t>& elements, std::string name) const;

  /// Greedy generating set: repeatedly adds the smallest element outside the
  /// subgroup generated so far.
  std::vector<std::size_t> generators() const;

 private:
  struct Data {
    std::string name;
    std::size_t n;
    std::vector<std::size_t> table;
    std::size_t identity;
    std::vector<std::size_t> inverse;
  };
  explicit FiniteGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

FiniteGroup cyclic_group(std::size_t n);
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
FiniteGroup symmetric_group_3();
FiniteGroup quaternion_group();
FiniteGroup alternating_group_4();

/// z<n>, klein4, s3, q8, a4, and products such as z2xz3.
FiniteGroup builtin_group(const std::string& name);

/// The group Z_{m_1} (+) ... (+) Z_{m_r}, written additively. Elements are
/// encoded as mixed-radix indices, first factor most significant.
class AbelianCoefficients {
 public:
  explicit AbelianCoefficients(std::vector<std::uint32_t> orders);
  /// "z2", "z2xz3", "klein4", or comma-separated orders "2,2".
  static AbelianCoefficients parse(const std::string& spec);

  const std::vector<std::uint32_t>& orders() const noexcept { return orders_; }
  std::size_t rank() const noexcept { return orders_.size(); }
  std::size_t size() const noexcept { return size_; }
  std::string name() const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t scale(std::int64_t k, std::uint32_t a) const;

  /// Component of `a` in cyclic factor `i`.
  std::uint32_t component(std::uint32_t a, std::size_t i) const;
  std::uint32_t encode(std::span<const std::int64_t> components) const;

  /// The coefficient group as a FiniteGroup (operation = addition).
  FiniteGroup as_group() const;

  friend bool operator==(const AbelianCoefficients& a, const AbelianCoefficients& b) {
    return a.orders_ == b.orders_;
  }

 private:
  std::vector<std::uint32_t> orders_;
  std::vector<std::uint32_t> radix_;  // place value of each factor
  std::size_t size_;
};

class Cochain {
 public:
  Cochain(FiniteGroup group, AbelianCoefficients coeffs, std::size_t degree);
  Cochain(FiniteGroup group, AbelianCoefficients coeffs, std::size_t degree, std::vector<std::uint32_t> values);

  const FiniteGroup& group() const noexcept { return g_; }
  const AbelianCoefficients& coefficients() const noexcept { return a_; }
  std::size_t degree() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::uint32_t operator[](std::size_t index) const { return values_[index]; }
  std::uint32_t& operator[](std::size_t index) { return values_[index]; }
  std::uint32_t at(std::span<const std::size_t> args) const { return values_[index_of(args)]; }
  std::uint32_t at(std::size_t p) const;
  std::uint32_t at(std::size_t p, std::size_t q) const;
  std::uint32_t at(std::size_t p, std::size_t q, std::size_t r) const;
  std::size_t index_of(std::span<const std::size_t> args) const;
  const std::vector<std::uint32_t>& values() const noexcept { return values_; }

  bool is_zero() const;
  /// Vanishes whenever some argument is the identity.
  bool is_normalized() const;

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;
  friend bool operator==(const Cochain& a, const Cochain& b);

 private:
  void require_compatible(const Cochain& o) const;
  FiniteGroup g_;
  AbelianCoefficients a_;
  std::size_t n_;
  std::vector<std::uint32_t> values_;
};

/// Homomorphism given by its value table, validated on construction.
class GroupHom {
 public:
  GroupHom(FiniteGroup source, FiniteGroup target, std::vector<std::size_t> images);

  const FiniteGroup& source() const noexcept { return src_; }
  const FiniteGroup& target() const noexcept { return dst_; }
  std::size_t operator()(std::size_t g) const { return images_[g]; }
  const std::vector<std::size_t>& images() const noexcept { return images_; }
  bool is_surjective() const;
  std::vector<std::size_t> kernel() const;

  /// First pair (g, h) with f(gh) != f(g) f(h), if any.
  static std::optional<std::pair<std::size_t, std::size_t>> first_violation(
      const FiniteGroup& source, const FiniteGroup& target, const std::vector<std::size_t>& images);

 private:
  FiniteGroup src_;
  FiniteGroup dst_;
  std::vector<std::size_t> images_;
};

/// Coboundary d_n for n <= 2, implementing the alternating sum literally.
Cochain coboundary(const Cochain& f);

/// Integer matrix of d_n on the free Z-module of n-cochains (rows: (n+1)-
/// tuples, cols: n-tuples). With `normalized`, only tuples free of the
/// identity are kept.
exact::IntegerMatrix coboundary_matrix(const FiniteGroup& g, std::size_t n, bool normalized = false);

struct CohomologyGroup {
  std::size_t degree = 0;
  std::vector<Integer> invariant_factors;  // each > 1, d_i | d_{i+1}
  Integer order() const;
  std::string to_string() const;
};

enum class CohomologyMethod {
  automatic,    // prime-field ranks for prime factors, Smith form otherwise
  smith,        // universal coefficients from integral Smith forms
  prime_field,  // ranks over F_p; only valid when every factor is prime
};

struct CohomologyOptions {
  bool normalized = false;
  CohomologyMethod method = CohomologyMethod::automatic;
};

/// H^n(P, A) for n in {1, 2}.
CohomologyGroup cohomology_group(const FiniteGroup& p, const AbelianCoefficients& a, std::size_t n,
                                 CohomologyOptions opts = {});

/// Z^n(P, A) = ker d_n presented by generators of the given orders; the group
/// is the direct sum of the cyclic groups they generate.
struct CocycleSpace {
  std::vector<Cochain> generators;
  std::vector<Integer> generator_orders;
  std::vector<Integer> invariant_factors;
  Integer order() const;
};

CocycleSpace cocycle_space(const FiniteGroup& p, const AbelianCoefficients& a, std::size_t n);

inline constexpr double kEnumerationLimit = 1u << 20;

/// Every n-cochain, in lexicographic order of value tables. Throws
/// SizeLimitExceeded when |A|^(|P|^n) exceeds `limit`.
std::vector<Cochain> enumerate_cochains(const FiniteGroup& p, const AbelianCoefficients& a, std::size_t n,
                                        double limit = kEnumerationLimit);
/// Z^n by exhaustive search over all n-cochains.
std::vector<Cochain> enumerate_cocycles(const FiniteGroup& p, const AbelianCoefficients& a, std::size_t n,
                                        double limit = kEnumerationLimit);
/// H^n by exhaustive enumeration of Z^n and B^n; the group structure is
/// recovered from the sizes of the p^j-torsion subgroups.
CohomologyGroup cohomology_by_enumeration(const FiniteGroup& p, const AbelianCoefficients& a, std::size_t n,
                                          double limit = kEnumerationLimit);

/// Solves d_{n-1} phi = c and computes invariants of c + B^n, per cyclic
/// factor, from the Smith form of d_{n-1} with both transforms.
class CoboundarySolver {
 public:
  CoboundarySolver(FiniteGroup p, AbelianCoefficients a, std::size_t n);

  std::optional<Cochain> solve(const Cochain& target) const;
  bool is_coboundary(const Cochain& c) const { return solve(c).has_value(); }
  /// Coordinates of c in C^n / B^n; equal iff the cochains differ by a
  /// coboundary.
  std::vector<Integer> class_coordinates(const Cochain& c) const;

 private:
  FiniteGroup p_;
  AbelianCoefficients a_;
  std::size_t n_;
  exact::SmithForm smith_;
};

/// Every homomorphism P -> Q, found by assigning images to a generating set.
std::vector<GroupHom> homomorphisms(const FiniteGroup& p, const FiniteGroup& q, double limit = 1u << 24);
/// Hom(P, A) with A viewed as a group.
std::vector<GroupHom> hom_group(const FiniteGroup& p, const AbelianCoefficients& a);

/// Pullback of f along sigma: E^n -> A.
struct Inflation {
  Cochain cochain;
  bool surjective;
  std::vector<std::string> warnings;
};

Inflation inflation(const GroupHom& sigma, const Cochain& f);

/// The 1-cochain with the same value table as a homomorphism into A.
Cochain as_cochain(const GroupHom& f, const AbelianCoefficients& a);

}  // namespace modcoh::group
