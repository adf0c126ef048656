#include "patlas/overlay.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "patlas/csv.hpp"

namespace patlas {
namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (u < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", u);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
  return out;
}

std::string significance_text(const SignificanceClass& s) {
  switch (s.kind) {
    case SignificanceKind::SigAbove: return "significantly above expectation";
    case SignificanceKind::Above: return "above expectation, not significant";
    case SignificanceKind::AboveSmallE: return "above expectation, not tested (expected <= 5)";
    case SignificanceKind::SigBelow: return "significantly below expectation";
    case SignificanceKind::Below: return "below expectation, not significant";
    case SignificanceKind::BelowSmallE: return "below expectation, not tested (expected <= 5)";
  }
  return "";
}

std::string rank_text(RankClass c) {
  switch (c) {
    case RankClass::Top1: return "top 1%";
    case RankClass::Top5: return "top 5%";
    case RankClass::Top10: return "top 10%";
    case RankClass::Top25: return "top 25%";
    case RankClass::Top50: return "top 50%";
    case RankClass::Bottom50: return "bottom 50%";
  }
  return "";
}

std::string header_lines(const CityAggregate& c) {
  return c.label + ", " + c.key.country + "\n" + std::to_string(c.patent_count) + " patents\n";
}

OverlayNode base_node(const CityAggregate& c) {
  OverlayNode n;
  n.key = c.key;
  n.lat = c.geo->lat;
  n.lon = c.geo->lon;
  n.label = c.label;
  n.patents = c.patent_count;
  n.size = node_size(c.patent_count);
  return n;
}

bool drawable(const CityAggregate& c, long min_patents) {
  return c.geo && c.patent_count >= min_patents && c.patent_count > 0;
}

}  // namespace

std::string_view to_string(OverlayMode m) {
  return m == OverlayMode::Citation ? "citation" : "portfolio";
}

double node_size(long patents) {
  return kNodeSizeMin + kNodeSizeScale * std::log(static_cast<double>(patents));
}

OverlayDocument build_citation_overlay(std::span<const CityAggregate> cities, long min_patents,
                                       std::string title) {
  OverlayDocument doc{OverlayMode::Citation, std::move(title), {}};
  for (const auto& c : cities) {
    if (!drawable(c, min_patents)) continue;
    auto n = base_node(c);
    n.color = std::string(c.significance.color_hex());
    n.class_name = c.significance.name();
    std::string z_line = "z: not tested";
    if (c.z_score) {
      z_line = "z: " + csv::fixed(*c.z_score, 3);
      if (const auto stars = c.significance.stars(); !stars.empty()) z_line += " " + stars;
    }
    n.description = header_lines(c) + "highly cited: observed " + std::to_string(c.top_cited_count) +
                    ", expected " + csv::fixed(c.expected_top_cited, 2) + "\n" + z_line + "\n" +
                    significance_text(c.significance);
    doc.nodes.push_back(std::move(n));
  }
  std::sort(doc.nodes.begin(), doc.nodes.end(),
            [](const OverlayNode& a, const OverlayNode& b) { return a.key < b.key; });
  return doc;
}

OverlayDocument build_portfolio_overlay(std::span<const CityAggregate> cities, long min_patents,
                                        std::string title) {
  std::vector<CityAggregate> ranked(cities.begin(), cities.end());
  apply_rank_classes(ranked, min_patents);
  OverlayDocument doc{OverlayMode::Portfolio, std::move(title), {}};
  for (const auto& c : ranked) {
    if (!drawable(c, min_patents) || !c.rank_class) continue;
    auto n = base_node(c);
    n.color = std::string(color_hex(*c.rank_class));
    n.class_name = std::string(to_string(*c.rank_class));
    n.description = header_lines(c) + "quantile: " + csv::fixed(*c.quantile, 4) + "\n" +
                    "rank class: " + rank_text(*c.rank_class);
    doc.nodes.push_back(std::move(n));
  }
  std::sort(doc.nodes.begin(), doc.nodes.end(),
            [](const OverlayNode& a, const OverlayNode& b) { return a.key < b.key; });
  return doc;
}

std::string kml_color(std::string_view rgb) {
  std::string out = "ff";
  out += rgb.substr(4, 2);
  out += rgb.substr(2, 2);
  out += rgb.substr(0, 2);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string emit_kml(const OverlayDocument& doc) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<kml xmlns=\"http://www.opengis.net/kml/2.2\">\n";
  out += "  <Document>\n";
  out += "    <name>" + xml_escape(doc.title) + "</name>\n";
  for (const auto& n : doc.nodes) {
    out += "    <Placemark>\n";
    out += "      <name>" + xml_escape(n.label) + "</name>\n";
    out += "      <description>" + xml_escape(n.description) + "</description>\n";
    out += "      <Style>\n";
    out += "        <IconStyle>\n";
    out += "          <color>" + kml_color(n.color) + "</color>\n";
    out += "          <scale>" + csv::fixed(n.size, 6) + "</scale>\n";
    out += "        </IconStyle>\n";
    out += "      </Style>\n";
    out += "      <Point>\n";
    out += "        <coordinates>" + csv::fixed(n.lon, 6) + "," + csv::fixed(n.lat, 6) + ",0</coordinates>\n";
    out += "      </Point>\n";
    out += "    </Placemark>\n";
  }
  out += "  </Document>\n";
  out += "</kml>\n";
  return out;
}

std::string emit_geojson(const OverlayDocument& doc) {
  std::string out;
  out += "{\n";
  out += "  \"type\": \"FeatureCollection\",\n";
  if (doc.nodes.empty()) {
    out += "  \"features\": []\n";
    out += "}\n";
    return out;
  }
  out += "  \"features\": [\n";
  for (std::size_t i = 0; i < doc.nodes.size(); ++i) {
    const auto& n = doc.nodes[i];
    out += "    {\n";
    out += "      \"type\": \"Feature\",\n";
    out += "      \"geometry\": {\n";
    out += "        \"type\": \"Point\",\n";
    out += "        \"coordinates\": [" + csv::fixed(n.lon, 6) + ", " + csv::fixed(n.lat, 6) + "]\n";
    out += "      },\n";
    out += "      \"properties\": {\n";
    out += "        \"label\": " + json_string(n.label) + ",\n";
    out += "        \"patents\": " + std::to_string(n.patents) + ",\n";
    out += "        \"size\": " + csv::fixed(n.size, 6) + ",\n";
    out += "        \"color\": " + json_string("#" + n.color) + ",\n";
    out += "        \"class\": " + json_string(n.class_name) + ",\n";
    out += "        \"description\": " + json_string(n.description) + ",\n";
    out += "        \"mode\": " + json_string(to_string(doc.mode)) + "\n";
    out += "      }\n";
    out += (i + 1 == doc.nodes.size()) ? "    }\n" : "    },\n";
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

}  // namespace patlas
