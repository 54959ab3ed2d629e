#include "dtbias/sample.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace dtbias {

namespace {

void check_observation(const TruncatedObservation& obs, std::size_t row) {
  if (!std::isfinite(obs.x) || !std::isfinite(obs.u) || !std::isfinite(obs.v)) {
    throw TruncationViolation(
        row, "row " + std::to_string(row) + ": non-finite value");
  }
  if (obs.u > obs.x || obs.x > obs.v) {
    throw TruncationViolation(
        row, "row " + std::to_string(row) +
                 ": observability condition u <= x <= v violated (u=" +
                 std::to_string(obs.u) + ", x=" + std::to_string(obs.x) +
                 ", v=" + std::to_string(obs.v) + ")");
  }
}

}  // namespace

TruncatedSample::TruncatedSample(std::vector<TruncatedObservation> observations)
    : obs_(std::move(observations)) {
  if (obs_.empty()) {
    throw EmptyInput("a truncated sample needs at least one observation");
  }
  for (std::size_t i = 0; i < obs_.size(); ++i) {
    check_observation(obs_[i], i);
  }
}

std::vector<double> TruncatedSample::xs() const {
  std::vector<double> out;
  out.reserve(obs_.size());
  for (const auto& o : obs_) out.push_back(o.x);
  return out;
}

ValidationResult validate_sample(const std::vector<RawRecord>& rows) {
  if (rows.empty()) {
    throw EmptyInput("no rows to validate");
  }
  std::vector<TruncatedObservation> kept;
  kept.reserve(rows.size());
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RawRecord& r = rows[i];
    if (!r.complete()) {
      ++dropped;
      continue;
    }
    TruncatedObservation obs{*r.x, *r.u, *r.v};
    check_observation(obs, i);
    kept.push_back(obs);
  }
  if (kept.empty()) {
    throw AllRowsInvalid("no row has complete (x, u, v) values");
  }
  return ValidationResult{TruncatedSample(std::move(kept)), dropped};
}

}  // namespace dtbias
