#include "vnfscale/sim_distribution.hpp"

#include <charconv>
#include <cmath>

#include "vnfscale/errors.hpp"

namespace vnfscale {

namespace {

struct FamilyName {
  DistributionFamily family;
  std::string_view name;
  double default_shape;
};

constexpr FamilyName kFamilies[] = {
    {DistributionFamily::kExponential, "exponential", 0.0},
    {DistributionFamily::kDeterministic, "deterministic", 0.0},
    {DistributionFamily::kErlang, "erlang", 2.0},
    {DistributionFamily::kUniform, "uniform", 1.0},
    {DistributionFamily::kTruncatedNormal, "truncated-normal", 0.5},
    {DistributionFamily::kPareto, "pareto", 2.5},
};

[[noreturn]] void bad(const std::string& detail) { throw ValidationError(Constraint::kDistribution, detail); }

bool takes_shape(DistributionFamily f) {
  return f != DistributionFamily::kExponential && f != DistributionFamily::kDeterministic;
}

}  // namespace

DistributionSpec parse_distribution(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  for (const FamilyName& f : kFamilies) {
    if (f.name != name) continue;
    DistributionSpec spec{f.family, f.default_shape, std::nullopt};
    if (colon != std::string_view::npos) {
      if (!takes_shape(f.family)) bad(std::string(name) + " takes no parameter");
      const std::string_view arg = text.substr(colon + 1);
      const auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), spec.shape);
      if (ec != std::errc() || end != arg.data() + arg.size()) bad("cannot parse parameter '" + std::string(arg) + "'");
    }
    validate(spec);
    return spec;
  }
  bad("unknown distribution '" + std::string(text) + "'");
}

std::string to_string(const DistributionSpec& spec) {
  for (const FamilyName& f : kFamilies) {
    if (f.family != spec.family) continue;
    std::string out(f.name);
    if (takes_shape(f.family)) {
      char buf[32];
      const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, spec.shape);
      out += ':';
      out.append(buf, end);
    }
    return out;
  }
  return "unknown";
}

void validate(const DistributionSpec& spec) {
  if (spec.mean && !(*spec.mean > 0.0 && std::isfinite(*spec.mean))) bad("mean > 0");
  switch (spec.family) {
    case DistributionFamily::kExponential:
    case DistributionFamily::kDeterministic:
      return;
    case DistributionFamily::kErlang:
      if (!(spec.shape >= 1.0) || spec.shape != std::floor(spec.shape)) bad("erlang phases must be an integer >= 1");
      return;
    case DistributionFamily::kUniform:
      if (!(spec.shape > 0.0 && spec.shape <= 1.0)) bad("uniform half-width must be in (0, 1]");
      return;
    case DistributionFamily::kTruncatedNormal:
      if (!(spec.shape > 0.0 && std::isfinite(spec.shape))) bad("truncated-normal cv must be > 0");
      return;
    case DistributionFamily::kPareto:
      if (!(spec.shape > 1.0 && std::isfinite(spec.shape))) bad("pareto shape must be > 1");
      return;
  }
}

DurationSampler::DurationSampler(const DistributionSpec& spec, double default_mean)
    : spec_(spec), mean_(spec.mean.value_or(default_mean)) {
  validate(spec_);
  if (!(mean_ > 0.0 && std::isfinite(mean_))) bad("mean > 0");
  switch (spec_.family) {
    case DistributionFamily::kExponential:
      exponential_ = std::exponential_distribution<double>(1.0 / mean_);
      break;
    case DistributionFamily::kErlang:
      gamma_ = std::gamma_distribution<double>(spec_.shape, mean_ / spec_.shape);
      break;
    case DistributionFamily::kUniform:
      uniform_ = std::uniform_real_distribution<double>(mean_ * (1.0 - spec_.shape), mean_ * (1.0 + spec_.shape));
      break;
    case DistributionFamily::kTruncatedNormal:
      normal_ = std::normal_distribution<double>(mean_, spec_.shape * mean_);
      break;
    case DistributionFamily::kPareto:
      pareto_scale_ = mean_ * (spec_.shape - 1.0) / spec_.shape;
      break;
    case DistributionFamily::kDeterministic:
      break;
  }
}

}  // namespace vnfscale
