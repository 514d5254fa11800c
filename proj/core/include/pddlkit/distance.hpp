#ifndef PDDLKIT_DISTANCE_HPP_
#define PDDLKIT_DISTANCE_HPP_

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pddlkit/sexpr.hpp"

namespace pddlkit {

inline constexpr std::string_view kDefaultLocationPredicate = "location";
inline constexpr std::string_view kDistancePredicate = "distance";

struct LocationFact {
  std::string object;
  std::vector<double> coords;
  Span span;
};

struct DistanceFact {
  std::string from;
  std::string to;
  double value = 0.0;
};

struct LocationExtraction {
  std::vector<LocationFact> facts;
  Diagnostics diagnostics;
};

/// Reads "(<predicate> obj c1 ... cd)" facts from the first :init block.
/// All facts must share one dimension d >= 1; mixed dimensions, non-numeric
/// coordinates and repeated objects are Error diagnostics.
LocationExtraction extract_locations(std::string_view problem_text,
                                     std::string_view predicate =
                                         kDefaultLocationPredicate);

/// Throws std::invalid_argument on a dimension mismatch.
double euclidean(std::span<const double> a, std::span<const double> b);

/// Half-up rounding to four decimals with trailing zeros stripped, keeping
/// at least one fractional digit: 0 -> "0.0", 2.5 -> "2.5",
/// 2.2360679... -> "2.2361".
std::string format_distance(double value);

/// All n*n ordered pairs in extraction order, self pairs included.
std::vector<DistanceFact> pairwise_distances(std::span<const LocationFact> facts);

class DistanceError : public std::runtime_error {
 public:
  DistanceError(const std::string& what, Diagnostics diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

struct AugmentResult {
  std::string text;
  std::size_t location_count = 0;
  std::size_t appended = 0;
  Diagnostics diagnostics;
};

/// Appends "(distance A B V)" for every ordered pair to the :init block.
/// Throws DistanceError when the locations cannot be extracted cleanly.
/// With no locations the text is returned unchanged plus a Warning.
AugmentResult augment_with_distances(std::string_view problem_text,
                                     std::string_view predicate =
                                         kDefaultLocationPredicate);

/// "<dir>/<stem>_dist<ext>" next to `problem`.
std::filesystem::path default_distance_output(const std::filesystem::path& problem);

}  // namespace pddlkit

#endif  // PDDLKIT_DISTANCE_HPP_
