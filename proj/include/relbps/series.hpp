#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "relbps/arith.hpp"

namespace relbps {

/// Which generating function a coefficient list belongs to.
enum class SequenceKind { LocalGW, LocalBPS, RelativeGW, RelativeBPS };

std::string_view to_string(SequenceKind kind);

class KindMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Truncated coefficient list of invariants in degrees d*beta, d = 1..N, for a
/// primitive class beta with intersection number w = E.beta. The formal
/// variable is implicit; entry d is the coefficient of q^d.
class InvariantSequence {
 public:
  InvariantSequence(SequenceKind kind, std::int64_t w, std::vector<Rational> values);

  SequenceKind kind() const { return kind_; }
  std::int64_t w() const { return w_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// Coefficient in degree d, 1 <= d <= size().
  const Rational& degree(std::int64_t d) const;

  std::span<const Rational> values() const& { return values_; }
  std::vector<Rational> values() && { return std::move(values_); }

  friend bool operator==(const InvariantSequence&, const InvariantSequence&) = default;

 private:
  SequenceKind kind_;
  std::int64_t w_;
  std::vector<Rational> values_;
};

/// Local multiple-cover formula: I(d) = sum_{k | d} n(d/k) / k^3.
InvariantSequence local_bps_to_gw(const InvariantSequence& bps);
InvariantSequence local_gw_to_bps(const InvariantSequence& gw);

/// Contribution (1/k^2) * binomial(k(w-1)-1, k-1) of k-fold covers of a rigid
/// curve of tangency w to the relative invariant in tangency kw.
Rational multiple_cover_relative(std::int64_t k, std::int64_t w);

/// Relative multiple-cover formula:
/// N(d) = sum_{k | d} M(k, (d/k) w) n(d/k) with M = multiple_cover_relative.
InvariantSequence relative_bps_to_gw(const InvariantSequence& bps);
InvariantSequence relative_gw_to_bps(const InvariantSequence& gw);

enum class BridgeDirection { LocalGWToRelativeGW, RelativeGWToLocalGW };

/// Entrywise N(d) = (-1)^{dw+1} dw I(d), or its inverse.
InvariantSequence ggh_bridge(const InvariantSequence& seq, BridgeDirection direction);

/// The scale (-1)^{dw+1} dw relating local and relative data in degree d.
Integer bridge_factor(std::int64_t d, std::int64_t w);

/// Local BPS -> local GW -> relative GW -> relative BPS.
InvariantSequence pipeline_local_bps_to_relative_bps(const InvariantSequence& bps);

/// Relative BPS -> relative GW -> local GW -> local BPS.
InvariantSequence pipeline_relative_bps_to_local_bps(const InvariantSequence& bps);

/// Walks the chain LocalBPS - LocalGW - RelativeGW - RelativeBPS from the
/// sequence's kind to `target`. Converting to the same kind is the identity.
InvariantSequence convert(const InvariantSequence& seq, SequenceKind target);

}  // namespace relbps
