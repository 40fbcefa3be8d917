#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cfscan/errors.hpp"

namespace cfscan {

// Finite set of categorical states; order fixes the state indices used
// everywhere downstream.
struct StateSpace {
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(labels.size()); }

  int index_of(const std::string& label) const {
    for (int j = 0; j < size(); ++j)
      if (labels[j] == label) return j;
    return -1;
  }

  bool operator==(const StateSpace&) const = default;
};

// Right-continuous step function on [0, horizon]: the state at time t is the
// state of the last segment starting at or before t, and the final state is
// held through the horizon.
template <typename Scalar>
struct StatePath {
  struct Segment {
    Scalar start;
    int state;
    bool operator==(const Segment&) const = default;
  };

  std::vector<Segment> segments;
  Scalar horizon{};

  bool operator==(const StatePath&) const = default;
};

struct Location {
  std::string id;
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Location&) const = default;
};

template <typename Scalar>
struct SpatialDataset {
  StateSpace states;
  Scalar horizon{};
  std::vector<Location> locations;
  std::vector<std::vector<StatePath<Scalar>>> paths;  // paths[k][i]

  long total_individuals() const {
    long n = 0;
    for (const auto& group : paths) n += static_cast<long>(group.size());
    return n;
  }

  std::vector<long> counts_per_location() const {
    std::vector<long> counts(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k) counts[k] = static_cast<long>(paths[k].size());
    return counts;
  }

  // Location index of each individual in flattened (location-major) order.
  std::vector<int> individual_locations() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(total_individuals()));
    for (std::size_t k = 0; k < paths.size(); ++k)
      out.insert(out.end(), paths[k].size(), static_cast<int>(k));
    return out;
  }

  std::vector<const StatePath<Scalar>*> flattened_paths() const {
    std::vector<const StatePath<Scalar>*> out;
    out.reserve(static_cast<std::size_t>(total_individuals()));
    for (const auto& group : paths)
      for (const auto& p : group) out.push_back(&p);
    return out;
  }

  bool operator==(const SpatialDataset&) const = default;
};

namespace detail {

// Canonicalizes one path: drops zero-duration segments, merges consecutive
// equal states, and rejects malformed inputs.
template <typename Scalar>
StatePath<Scalar> validate_path(const StatePath<Scalar>& raw, int n_states) {
  if (raw.segments.empty()) throw InvalidPath("path has no segments");
  const Scalar T = raw.horizon;
  if (!(T > Scalar(0)) || !std::isfinite(static_cast<double>(T)))
    throw InvalidPath("path horizon must be positive and finite");
  for (const auto& seg : raw.segments) {
    if (!std::isfinite(static_cast<double>(seg.start)))
      throw InvalidPath("segment start time is not finite");
    if (seg.state < 0 || seg.state >= n_states)
      throw InvalidPath("segment state index out of range");
  }
  if (raw.segments.front().start != Scalar(0))
    throw InvalidPath("first segment must start at time 0");
  for (std::size_t q = 1; q < raw.segments.size(); ++q)
    if (raw.segments[q].start < raw.segments[q - 1].start)
      throw InvalidPath("segment start times must be non-decreasing");

  StatePath<Scalar> out;
  out.horizon = T;
  const auto& segs = raw.segments;
  for (std::size_t q = 0; q < segs.size(); ++q) {
    const Scalar begin = std::min(segs[q].start, T);
    const Scalar end = q + 1 < segs.size() ? std::min(segs[q + 1].start, T) : T;
    if (!(end > begin)) continue;  // zero duration
    if (!out.segments.empty() && out.segments.back().state == segs[q].state) continue;
    out.segments.push_back({segs[q].start, segs[q].state});
  }
  if (out.segments.empty()) throw InvalidPath("path has no segment of positive duration");
  return out;
}

}  // namespace detail

// Returns the dataset in canonical form iff every type invariant holds.
template <typename Scalar>
SpatialDataset<Scalar> validate_dataset(const SpatialDataset<Scalar>& raw) {
  if (raw.states.size() < 2) throw InvalidArgument("state space needs at least 2 states");
  {
    std::unordered_set<std::string> seen;
    for (const auto& label : raw.states.labels)
      if (label.empty() || !seen.insert(label).second)
        throw InvalidArgument("state labels must be unique and nonempty");
  }
  if (raw.locations.size() < 2) throw EmptyDataset("dataset needs at least 2 locations");
  if (raw.paths.size() != raw.locations.size())
    throw EmptyDataset("paths must be grouped per location");
  {
    std::unordered_set<std::string> seen;
    for (const auto& loc : raw.locations) {
      if (loc.id.empty() || !seen.insert(loc.id).second)
        throw InvalidLocation("location ids must be unique and nonempty: '" + loc.id + "'");
      if (!std::isfinite(loc.x) || !std::isfinite(loc.y))
        throw InvalidLocation("location '" + loc.id + "' has non-finite coordinates");
    }
  }
  if (!(raw.horizon > Scalar(0)) || !std::isfinite(static_cast<double>(raw.horizon)))
    throw MismatchedHorizon("dataset horizon must be positive and finite");

  SpatialDataset<Scalar> out;
  out.states = raw.states;
  out.horizon = raw.horizon;
  out.locations = raw.locations;
  out.paths.resize(raw.paths.size());
  long n = 0;
  for (std::size_t k = 0; k < raw.paths.size(); ++k) {
    out.paths[k].reserve(raw.paths[k].size());
    for (const auto& p : raw.paths[k]) {
      if (p.horizon != raw.horizon)
        throw MismatchedHorizon("path horizon differs from dataset horizon at location '" +
                                raw.locations[k].id + "'");
      out.paths[k].push_back(detail::validate_path(p, raw.states.size()));
      ++n;
    }
  }
  if (n < 2) throw EmptyDataset("dataset needs at least 2 individuals");
  return out;
}

// Right-continuous evaluation; state_at(path, horizon) is the final state.
template <typename Scalar>
int state_at(const StatePath<Scalar>& path, Scalar t) {
  if (t < Scalar(0) || t > path.horizon) throw TimeOutOfDomain("time outside [0, horizon]");
  auto it = std::upper_bound(path.segments.begin(), path.segments.end(), t,
                             [](Scalar value, const auto& seg) { return value < seg.start; });
  return std::prev(it)->state;
}

// Total time spent in each state; entries sum to the horizon.
template <typename Scalar>
Eigen::VectorX<Scalar> sojourn_durations(const StatePath<Scalar>& path, int n_states) {
  Eigen::VectorX<Scalar> out = Eigen::VectorX<Scalar>::Zero(n_states);
  const auto& segs = path.segments;
  for (std::size_t q = 0; q < segs.size(); ++q) {
    const Scalar end = q + 1 < segs.size() ? segs[q + 1].start : path.horizon;
    out[segs[q].state] += end - segs[q].start;
  }
  return out;
}

using StatePathd = StatePath<double>;
using SpatialDatasetd = SpatialDataset<double>;

}  // namespace cfscan
