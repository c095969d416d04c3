#include "relbps/series.hpp"

#include <string>

namespace relbps {

namespace {

void expect_kind(const InvariantSequence& seq, SequenceKind expected, std::string_view op) {
  if (seq.kind() != expected) {
    throw KindMismatchError(std::string(op) + ": expected " + std::string(to_string(expected)) +
                            " sequence, got " + std::string(to_string(seq.kind())));
  }
}

// Coefficient of n(j) in the degree j*k equation of a divisor-sum transform.
using Kernel = Rational (*)(std::int64_t k, std::int64_t j, std::int64_t w);

Rational local_kernel(std::int64_t k, std::int64_t, std::int64_t) {
  const Integer k3 = power(k, 3);
  return Rational(1, 1) / Rational(k3);
}

Rational relative_kernel(std::int64_t k, std::int64_t j, std::int64_t w) {
  return multiple_cover_relative(k, j * w);
}

// out(jk) = sum over divisor pairs of kernel(k, j) * in(j).
std::vector<Rational> forward(std::span<const Rational> in, std::int64_t w, Kernel kernel) {
  const auto n = static_cast<std::int64_t>(in.size());
  std::vector<Rational> out(in.size());
  for (std::int64_t j = 1; j <= n; ++j) {
    const Rational& x = in[j - 1];
    if (x == 0) continue;
    for (std::int64_t k = 1; j * k <= n; ++k) out[j * k - 1] += kernel(k, j, w) * x;
  }
  return out;
}

// Unitriangular forward substitution in ascending degree: the k = 1 kernel is 1.
std::vector<Rational> backward(std::span<const Rational> in, std::int64_t w, Kernel kernel) {
  const auto n = static_cast<std::int64_t>(in.size());
  std::vector<Rational> residual(in.begin(), in.end());
  std::vector<Rational> out(in.size());
  for (std::int64_t j = 1; j <= n; ++j) {
    out[j - 1] = residual[j - 1];
    const Rational& x = out[j - 1];
    if (x == 0) continue;
    for (std::int64_t k = 2; j * k <= n; ++k) residual[j * k - 1] -= kernel(k, j, w) * x;
  }
  return out;
}

std::vector<Rational> to_vector(std::span<const Rational> v) { return {v.begin(), v.end()}; }

}  // namespace

std::string_view to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::LocalGW: return "local_gw";
    case SequenceKind::LocalBPS: return "local_bps";
    case SequenceKind::RelativeGW: return "relative_gw";
    case SequenceKind::RelativeBPS: return "relative_bps";
  }
  return "unknown";
}

InvariantSequence::InvariantSequence(SequenceKind kind, std::int64_t w, std::vector<Rational> values)
    : kind_(kind), w_(w), values_(std::move(values)) {
  if (w_ < 1) throw DomainError("intersection number w must be >= 1, got " + std::to_string(w_));
}

const Rational& InvariantSequence::degree(std::int64_t d) const {
  if (d < 1 || static_cast<std::size_t>(d) > values_.size())
    throw std::out_of_range("degree " + std::to_string(d) + " outside 1.." +
                            std::to_string(values_.size()));
  return values_[d - 1];
}

InvariantSequence local_bps_to_gw(const InvariantSequence& bps) {
  expect_kind(bps, SequenceKind::LocalBPS, "local_bps_to_gw");
  return {SequenceKind::LocalGW, bps.w(), forward(bps.values(), bps.w(), local_kernel)};
}

InvariantSequence local_gw_to_bps(const InvariantSequence& gw) {
  expect_kind(gw, SequenceKind::LocalGW, "local_gw_to_bps");
  return {SequenceKind::LocalBPS, gw.w(), backward(gw.values(), gw.w(), local_kernel)};
}

Rational multiple_cover_relative(std::int64_t k, std::int64_t w) {
  if (k < 1 || w < 1) throw DomainError("multiple_cover_relative: k and w must be >= 1");
  Rational out(binomial(k * (w - 1) - 1, k - 1));
  out /= Rational(power(k, 2));
  return out;
}

InvariantSequence relative_bps_to_gw(const InvariantSequence& bps) {
  expect_kind(bps, SequenceKind::RelativeBPS, "relative_bps_to_gw");
  return {SequenceKind::RelativeGW, bps.w(), forward(bps.values(), bps.w(), relative_kernel)};
}

InvariantSequence relative_gw_to_bps(const InvariantSequence& gw) {
  expect_kind(gw, SequenceKind::RelativeGW, "relative_gw_to_bps");
  return {SequenceKind::RelativeBPS, gw.w(), backward(gw.values(), gw.w(), relative_kernel)};
}

Integer bridge_factor(std::int64_t d, std::int64_t w) {
  const std::int64_t dw = d * w;
  return Integer(static_cast<long>(sign_power(dw + 1) * dw));
}

InvariantSequence ggh_bridge(const InvariantSequence& seq, BridgeDirection direction) {
  if (seq.w() < 1) throw DomainError("ggh_bridge: w must be >= 1");
  const bool to_relative = direction == BridgeDirection::LocalGWToRelativeGW;
  expect_kind(seq, to_relative ? SequenceKind::LocalGW : SequenceKind::RelativeGW, "ggh_bridge");
  auto values = to_vector(seq.values());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Rational factor(bridge_factor(static_cast<std::int64_t>(i) + 1, seq.w()));
    if (to_relative)
      values[i] *= factor;
    else
      values[i] /= factor;
  }
  return {to_relative ? SequenceKind::RelativeGW : SequenceKind::LocalGW, seq.w(),
          std::move(values)};
}

InvariantSequence pipeline_local_bps_to_relative_bps(const InvariantSequence& bps) {
  expect_kind(bps, SequenceKind::LocalBPS, "pipeline_local_bps_to_relative_bps");
  return relative_gw_to_bps(
      ggh_bridge(local_bps_to_gw(bps), BridgeDirection::LocalGWToRelativeGW));
}

InvariantSequence pipeline_relative_bps_to_local_bps(const InvariantSequence& bps) {
  expect_kind(bps, SequenceKind::RelativeBPS, "pipeline_relative_bps_to_local_bps");
  return local_gw_to_bps(
      ggh_bridge(relative_bps_to_gw(bps), BridgeDirection::RelativeGWToLocalGW));
}

InvariantSequence convert(const InvariantSequence& seq, SequenceKind target) {
  auto position = [](SequenceKind kind) {
    switch (kind) {
      case SequenceKind::LocalBPS: return 0;
      case SequenceKind::LocalGW: return 1;
      case SequenceKind::RelativeGW: return 2;
      case SequenceKind::RelativeBPS: return 3;
    }
    return 0;
  };
  InvariantSequence cur = seq;
  while (cur.kind() != target) {
    const bool up = position(cur.kind()) < position(target);
    switch (cur.kind()) {
      case SequenceKind::LocalBPS:
        cur = local_bps_to_gw(cur);
        break;
      case SequenceKind::LocalGW:
        cur = up ? ggh_bridge(cur, BridgeDirection::LocalGWToRelativeGW) : local_gw_to_bps(cur);
        break;
      case SequenceKind::RelativeGW:
        cur = up ? relative_gw_to_bps(cur) : ggh_bridge(cur, BridgeDirection::RelativeGWToLocalGW);
        break;
      case SequenceKind::RelativeBPS:
        cur = relative_bps_to_gw(cur);
        break;
    }
  }
  return cur;
}

}  // namespace relbps
