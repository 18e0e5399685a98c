#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stratifold/certificates.hpp"
#include "stratifold/oracle.hpp"
#include "stratifold/presentation.hpp"

namespace stratifold {

// Certificate store with gcd closure: sigma(b) is always the gcd of every
// certified exponent for b (0 when there is none).
class CertificateStore {
 public:
  CertificateStore(const Stratifold& s, const Budget& budget);

  const std::vector<std::int64_t>& sigma() const { return sigma_; }
  const std::vector<ExponentCertificate>& certificates() const { return certs_; }
  const std::vector<int>& sigma_certificate() const { return sigma_cert_; }

  // b^e = 1 is already implied by the current certificates.
  bool implied(int black, std::int64_t e) const;
  // Replays the derivation against the budget; on success records it and
  // refreshes sigma. Returns false (and records nothing) otherwise.
  bool add(int black, std::int64_t e, Derivation d, std::string rule);
  std::vector<Lemma> lemmas() const;

 private:
  const Stratifold& s_;
  Budget budget_;
  std::vector<std::int64_t> sigma_;
  std::vector<int> sigma_cert_;
  std::vector<ExponentCertificate> certs_;
};

// Replays every certificate of an assignment against its presentation;
// gcd nodes are checked arithmetically against their children.
bool verify_certificates(const Stratifold& s, const OrderAssignment& a, std::string* why = nullptr);

// Rule D (disk boundaries) and rule C (budgeted consequence search).
CertificateStore seed_exponents(const Stratifold& s, const Budget& budget);

enum class ViolationKind {
  // c_j = 1 once the killed boundaries are removed.
  BoundaryTrivial,
  // c_a c_b = 1 once the killed boundaries are removed.
  BoundaryPair,
};

struct Violation {
  ViolationKind kind = ViolationKind::BoundaryTrivial;
  int white = 0;
  int edge = 0;     // boundary whose order is wrong
  int partner = -1; // BoundaryPair only
  std::int64_t required = 0;
  std::int64_t actual = 0;
  int black = 0;
  std::int64_t target = 0;  // exponent e of the new relation b^e = 1
};

std::vector<Violation> validity_check(const Stratifold& s, const std::vector<std::int64_t>& sigma);

// Derivation for a violation, built constructively and falling back to
// breadth-first search. nullopt when neither fits the budget.
std::optional<Derivation> certify_violation(const Stratifold& s, const CertificateStore& store,
                                            const Violation& v, const Budget& budget);

OrderAssignment resolve_orders(const Stratifold& s, const Budget& budget = {});

// Order of b in H_1 (0 = infinite).
std::int64_t abelian_order(const Stratifold& s, const SmithForm& snf, int black);

}  // namespace stratifold
