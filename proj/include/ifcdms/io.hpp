#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ifcdms/channel.hpp"
#include "ifcdms/geometry.hpp"

namespace ifcdms {

/// 12 significant digits with '.' as the decimal separator, independent of
/// the process locale.
std::string format_number(double v);

/// CSV with header `param,R1_bits,R2_bits` and LF line endings.
std::string to_csv(const CornerCurve& curve);

/// Boundary polyline as a curve whose parameter is the vertex index.
CornerCurve polyline_curve(const RateRegion& region);

/// Channel document: {"nx1", "nx2", "ny1", "ny2", "p": [...]} with p in
/// IFCChannel index order. Throws ParseError on malformed JSON, missing
/// fields, wrong length or invalid probabilities.
IFCChannel parse_channel(std::string_view json_text);
std::string channel_to_json(const IFCChannel& ch);

struct SvgSeries {
  std::string name;
  std::vector<RatePair> points;
  std::string color;
  bool markers = false;  // draw points instead of a polyline
};

/// Standalone 800x600 SVG plot with axes in bits and a legend.
std::string render_svg(const std::string& title, const std::vector<SvgSeries>& series);

/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::string& path);

/// Writes a whole file in binary mode; throws std::runtime_error on failure.
void write_file(const std::string& path, std::string_view content);

}  // namespace ifcdms
