#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dtbias/errors.hpp"

namespace dtbias {

// One doubly truncated observation: the target value x entered the sample
// only because u <= x <= v held for its truncation limits.
struct TruncatedObservation {
  double x;
  double u;
  double v;
};

// Immutable, order-preserving collection of validated observations.
// Bootstrap resampling indexes rows by position, so input order matters.
class TruncatedSample {
 public:
  explicit TruncatedSample(std::vector<TruncatedObservation> observations);

  std::size_t size() const { return obs_.size(); }
  const TruncatedObservation& operator[](std::size_t i) const { return obs_[i]; }
  const std::vector<TruncatedObservation>& observations() const { return obs_; }

  // Target values in input order.
  std::vector<double> xs() const;

  auto begin() const { return obs_.begin(); }
  auto end() const { return obs_.end(); }

 private:
  std::vector<TruncatedObservation> obs_;
};

// Raw ingestion record; an absent field marks a missing value.
struct RawRecord {
  std::optional<double> x;
  std::optional<double> u;
  std::optional<double> v;

  bool complete() const { return x && u && v; }
};

struct ValidationResult {
  TruncatedSample sample;
  std::size_t dropped_missing;  // records removed for missing fields
};

// Keeps the complete rows in input order and counts the incomplete ones.
// Throws AllRowsInvalid when nothing survives and TruncationViolation when a
// complete row breaks u <= x <= v.
ValidationResult validate_sample(const std::vector<RawRecord>& rows);

}  // namespace dtbias
