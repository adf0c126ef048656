#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patlas/citystats.hpp"

namespace patlas {

enum class OverlayMode { Citation, Portfolio };

std::string_view to_string(OverlayMode m);

// Icon scale: kNodeSizeMin + kNodeSizeScale * ln(patents).
inline constexpr double kNodeSizeMin = 0.4;
inline constexpr double kNodeSizeScale = 0.3;

double node_size(long patents);

struct OverlayNode {
  CityKey key;
  double lat = 0.0;
  double lon = 0.0;
  std::string label;
  long patents = 0;
  double size = 0.0;
  std::string color;       // RRGGBB
  std::string class_name;  // significance or rank class
  std::string description;
};

struct OverlayDocument {
  OverlayMode mode = OverlayMode::Citation;
  std::string title;
  std::vector<OverlayNode> nodes;  // sorted by key
};

// Cities with at least `min_patents` patents and resolved coordinates,
// coloured by citation significance. Expects apply_citation_tests output.
OverlayDocument build_citation_overlay(std::span<const CityAggregate> cities, long min_patents,
                                       std::string title = "Citation performance");

// Same filter, coloured by percentile rank class. Ranks are computed among
// the cities that pass the patent filter.
OverlayDocument build_portfolio_overlay(std::span<const CityAggregate> cities, long min_patents,
                                        std::string title = "Patent portfolio");

// RRGGBB -> KML aabbggrr at full opacity.
std::string kml_color(std::string_view rgb);

std::string emit_kml(const OverlayDocument& doc);

// RFC 7946 FeatureCollection, 2-space indentation, LF line endings.
std::string emit_geojson(const OverlayDocument& doc);

}  // namespace patlas
