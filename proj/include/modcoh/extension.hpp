#pragma once

// Central extensions 0 -> A -> G -> P -> 1 realized as multiplication tables
// on A x P with
//   (a, p)(b, q) = (a + b - w(p, q), pq),
// element (a, p) stored at index a|P| + p. The identity of G is (w(1,1), 1)
// and the kernel embedding is i(a) = (a + w(1,1), 1).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modcoh/error.hpp"
#include "modcoh/grpcoh.hpp"

namespace modcoh::ext {

using group::AbelianCoefficients;
using group::Cochain;
using group::FiniteGroup;
using group::GroupHom;
using group::Integer;

/// build_extension on a non-cocycle; carries a triple on which the table is
/// not associative.
class NotACocycle : public MathError {
 public:
  NotACocycle(std::array<std::size_t, 3> triple, const std::string& what) : MathError(what), triple_(triple) {}
  const std::array<std::size_t, 3>& triple() const noexcept { return triple_; }

 private:
  std::array<std::size_t, 3> triple_;
};

struct CentralExtensionTable {
  FiniteGroup base;
  AbelianCoefficients kernel;
  Cochain cocycle;
  FiniteGroup carrier;
  GroupHom projection;
  std::vector<std::size_t> embedding;  // A index -> carrier index

  std::size_t encode(std::uint32_t a, std::size_t p) const { return a * base.order() + p; }
  std::uint32_t kernel_part(std::size_t g) const { return static_cast<std::uint32_t>(g / base.order()); }
  std::size_t base_part(std::size_t g) const { return g % base.order(); }
};

CentralExtensionTable build_extension(const FiniteGroup& p, const AbelianCoefficients& a, const Cochain& w);

struct ExactnessReport {
  bool order_ok = false;       // |G| = |A||P|
  bool kernel_ok = false;      // ker pi = i(A)
  bool central_ok = false;     // i(A) commutes with all of G
  bool surjective_ok = false;  // pi onto P
  bool injective_ok = false;   // i injective homomorphism
  bool ok() const { return order_ok && kernel_ok && central_ok && surjective_ok && injective_ok; }
};

/// Exhaustive table scan of the short exact sequence.
ExactnessReport check_exactness(const CentralExtensionTable& e);

/// Section P -> G with pi(s(p)) = p.
struct Section {
  std::vector<std::size_t> values;
};

enum class SectionConvention { canonical, random };

/// canonical: s(p) = (0, p). random: s(p) = (a_p, p) with a_p drawn from a
/// seeded generator.
Section extract_section(const CentralExtensionTable& e, SectionConvention convention, std::uint64_t seed = 0);

/// w_s(p, q) = i^{-1}( s(pq) (s(p) s(q))^{-1} ). For the canonical section of
/// build_extension(P, A, w) this returns w itself.
Cochain cocycle_of_section(const CentralExtensionTable& e, const Section& s);

/// The 1-cochain d with s2(p) = s1(p) i(d(p)); then w_{s2} = w_{s1} - d_1 d.
Cochain section_difference(const CentralExtensionTable& e, const Section& s1, const Section& s2);

struct Equivalence {
  Cochain phi;                   // w1 - w2 = d_1 phi
  std::vector<std::size_t> map;  // carrier of e2 -> carrier of e1, (a, p) -> (a + phi(p), p)
};

/// Solves w1 - w2 = d_1 phi over each cyclic factor and, when |A|^|P| <=
/// 2^16, confirms the answer by exhaustive search. A returned witness has
/// been checked to induce an isomorphism fixing A and commuting with both
/// projections.
std::optional<Equivalence> are_equivalent(const CentralExtensionTable& e1, const CentralExtensionTable& e2);

inline constexpr double kExhaustiveEquivalenceLimit = 1u << 16;

/// A homomorphic section P -> G, if the sequence splits.
std::optional<GroupHom> is_split(const CentralExtensionTable& e);

/// U(g) = s(sigma(g)) i(phi(g)) = (phi(g), sigma(g)) for the canonical section
/// s. Requires d_1 phi to equal the inflation of e's cocycle along sigma;
/// otherwise throws SplittingRejected naming the first violating pair.
GroupHom construct_splitting(const FiniteGroup& e_group, const GroupHom& sigma, const CentralExtensionTable& e,
                             const Cochain& phi);

class SplittingRejected : public MathError {
 public:
  SplittingRejected(std::pair<std::size_t, std::size_t> pair, const std::string& what)
      : MathError(what), pair_(pair) {}
  const std::pair<std::size_t, std::size_t>& pair() const noexcept { return pair_; }

 private:
  std::pair<std::size_t, std::size_t> pair_;
};

struct CorrespondenceEntry {
  Cochain representative;         // w in Z^2(P, A)
  std::vector<Integer> coordinates;
  std::optional<Cochain> phi;     // d_1 phi = inflated w, if it splits
  std::vector<std::uint32_t> psi;  // homomorphism S -> A on kernel_elements
};

struct CorrespondenceReport {
  std::vector<std::size_t> kernel_elements;  // S = ker sigma, in E's indexing
  std::size_t h1_order = 0;                  // |H^1(S, A)| = |Hom(S, A)|
  Integer h2_order;                          // |H^2(P, A)|
  bool applicable = false;                   // every class splits after inflation
  bool injective = false;
  bool bijective = false;
  std::size_t restriction_ambiguity = 1;     // |restrictions of Hom(E, A) to S|
  std::vector<CorrespondenceEntry> classes;
  std::string note;
};

/// Compares H^1(ker sigma, A) with H^2(P, A) and, where every class of
/// H^2(P, A) becomes a coboundary on E, exhibits the map [w] -> psi where
/// psi(s) = phi(s) - phi(1). psi is reported in its lexicographically least
/// form modulo restrictions of Hom(E, A).
CorrespondenceReport h1_h2_correspondence_check(const FiniteGroup& e_group, const GroupHom& sigma,
                                                const AbelianCoefficients& a);

/// Representatives of all classes in H^2(P, A), the zero class first.
std::vector<Cochain> class_representatives(const FiniteGroup& p, const AbelianCoefficients& a,
                                           std::size_t limit = 4096);

}  // namespace modcoh::ext
