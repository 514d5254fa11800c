#include "pddlkit/distance.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <set>

#include "pddlkit/construct_io.hpp"
#include "pddlkit/pddl_model.hpp"

namespace pddlkit {

namespace {

void error(Diagnostics& diags, const Span& span, std::string message,
           std::string code) {
  diags.push_back({span, Severity::Error, std::move(message),
                   std::move(code)});
}

std::optional<double> parse_coordinate(std::string_view text) {
  if (!is_pddl_number(text)) return std::nullopt;
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

/// Adds one to a string of decimal digits; returns true on overflow.
bool increment_digits(std::string& digits) {
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it != '9') {
      ++*it;
      return false;
    }
    *it = '0';
  }
  return true;
}

}  // namespace

LocationExtraction extract_locations(std::string_view problem_text,
                                     std::string_view predicate) {
  LocationExtraction out;
  auto parsed = parse_sexpr(problem_text);
  auto inits = find_blocks(parsed.forest, ":init");
  if (inits.empty()) {
    out.diagnostics.push_back({{}, Severity::Warning,
                               "problem has no :init block", "missing-init"});
    return out;
  }

  std::set<std::string> objects;
  const LocationFact* first = nullptr;
  auto elems = inits.front()->elements();
  for (std::size_t i = 1; i < elems.size(); ++i) {
    const SExprNode& fact = *elems[i];
    if (!fact.is_headed_by(predicate)) continue;
    auto parts = fact.elements();
    if (parts.size() < 3 || !parts[1]->is_atom()) {
      error(out.diagnostics, fact.span,
            "location fact needs an object and at least one coordinate",
            "bad-location");
      continue;
    }
    LocationFact location;
    location.object = parts[1]->text;
    location.span = fact.span;
    bool ok = true;
    for (std::size_t k = 2; k < parts.size(); ++k) {
      const SExprNode& atom = *parts[k];
      auto value = atom.is_atom() ? parse_coordinate(atom.text) : std::nullopt;
      if (!value) {
        error(out.diagnostics, atom.span,
              "coordinate of '" + location.object + "' is not a number",
              "non-numeric-coordinate");
        ok = false;
        continue;
      }
      location.coords.push_back(*value);
    }
    if (!ok) continue;
    if (!objects.insert(location.object).second) {
      error(out.diagnostics, fact.span,
            "object '" + location.object + "' has more than one location",
            "duplicate-location");
      continue;
    }
    if (first != nullptr && first->coords.size() != location.coords.size()) {
      error(out.diagnostics, fact.span,
            "'" + location.object + "' has " +
                std::to_string(location.coords.size()) +
                " coordinates but '" + first->object + "' has " +
                std::to_string(first->coords.size()),
            "mixed-dimensions");
      continue;
    }
    out.facts.push_back(std::move(location));
    first = &out.facts.front();
  }
  return out;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("coordinate dimensions differ: " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

std::string format_distance(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument("distance must be finite and non-negative");
  }
  // Round the shortest round-trip decimal form, not the binary value.
  char buffer[512];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value,
                                 std::chars_format::fixed);
  if (ec != std::errc()) throw std::invalid_argument("distance out of range");
  const std::string repr(buffer, ptr);

  const auto dot = repr.find('.');
  std::string whole = repr.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : repr.substr(dot + 1);
  if (frac.size() > 4) {
    const bool round_up = frac[4] >= '5';
    frac.resize(4);
    if (round_up && increment_digits(frac) && increment_digits(whole)) {
      whole.insert(whole.begin(), '1');
    }
  }
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  if (frac.empty()) frac = "0";
  return whole + "." + frac;
}

std::vector<DistanceFact> pairwise_distances(
    std::span<const LocationFact> facts) {
  std::vector<DistanceFact> out;
  out.reserve(facts.size() * facts.size());
  for (const auto& a : facts) {
    for (const auto& b : facts) {
      out.push_back({a.object, b.object, euclidean(a.coords, b.coords)});
    }
  }
  return out;
}

AugmentResult augment_with_distances(std::string_view problem_text,
                                     std::string_view predicate) {
  auto extraction = extract_locations(problem_text, predicate);
  if (has_errors(extraction.diagnostics)) {
    std::string first;
    for (const auto& d : extraction.diagnostics) {
      if (d.severity == Severity::Error) {
        first = d.message;
        break;
      }
    }
    throw DistanceError("cannot extract locations: " + first,
                        std::move(extraction.diagnostics));
  }
  AugmentResult result;
  result.diagnostics = std::move(extraction.diagnostics);
  result.location_count = extraction.facts.size();
  if (extraction.facts.empty()) {
    result.text = std::string(problem_text);
    result.diagnostics.push_back(
        {{}, Severity::Warning,
         "no '" + std::string(predicate) + "' facts found; nothing to add",
         "no-locations"});
    return result;
  }

  std::string facts_text;
  for (const auto& d : pairwise_distances(extraction.facts)) {
    facts_text += "(" + std::string(kDistancePredicate) + " " + d.from + " " +
                  d.to + " " + format_distance(d.value) + ")\n";
  }
  auto constructs = parse_constructs(facts_text);
  result.appended = constructs.size();
  result.text = add_construct_text(problem_text, ":init", constructs);
  return result;
}

std::filesystem::path default_distance_output(
    const std::filesystem::path& problem) {
  auto out = problem;
  out.replace_filename(problem.stem().string() + "_dist" +
                       (problem.has_extension() ? problem.extension().string()
                                                : std::string(".pddl")));
  return out;
}

}  // namespace pddlkit
