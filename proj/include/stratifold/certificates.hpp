#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stratifold/word.hpp"

namespace stratifold {

// Bounds every consequence derivation: number of insertions and the longest
// intermediate word (in unit letters). node_cap only limits breadth-first
// search and is not part of a certificate.
struct Budget {
  int insertions = 6;
  int max_length = 64;
  std::size_t node_cap = 4000;
};

enum class InsertionSource { Relator, Lemma };

// Inserts, at letter position `pos` of the current free-reduced word, either
// a cyclic rotation of relator^sign or a previously certified power b^exponent.
struct Insertion {
  std::size_t pos = 0;
  InsertionSource source = InsertionSource::Relator;
  int relator = 0;
  int rotation = 0;
  int sign = 1;
  int black = 0;
  std::int64_t exponent = 0;
};

struct Derivation {
  Word start;
  std::vector<Insertion> steps;
};

enum class CertificateKind { Derived, Gcd };

// b^exponent = 1, either by a derivation or as the gcd of two earlier
// certificates for the same black vertex.
struct ExponentCertificate {
  int black = 0;
  std::int64_t exponent = 0;
  CertificateKind kind = CertificateKind::Derived;
  std::string rule;  // "disk", "search", "violation:..."
  Derivation derivation;
  int left = -1;
  int right = -1;
};

enum class OrderStatus { Exact, Undetermined };

struct OrderAssignment {
  std::vector<std::int64_t> sigma;      // per black, 0 = infinite
  OrderStatus status = OrderStatus::Exact;
  std::vector<int> undetermined;        // blacks with unresolved violations
  std::vector<ExponentCertificate> certificates;
  std::vector<int> sigma_certificate;   // per black, -1 when sigma == 0
  std::vector<std::int64_t> abelian_order;  // order of b in H_1, 0 = infinite
  std::vector<std::string> notes;
  int iterations = 0;

  bool exact() const { return status == OrderStatus::Exact; }
};

}  // namespace stratifold
