#include "ifcdms/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "ifcdms/errors.hpp"

namespace ifcdms {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  if (v == 0.0) v = 0.0;
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

double nice_step(double range) {
  const double raw = range / 8.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string to_csv(const CornerCurve& curve) {
  std::string out = "param,R1_bits,R2_bits\n";
  for (const auto& p : curve.points) {
    out += format_number(p.param);
    out += ',';
    out += format_number(p.rate.r1);
    out += ',';
    out += format_number(p.rate.r2);
    out += '\n';
  }
  return out;
}

CornerCurve polyline_curve(const RateRegion& region) {
  CornerCurve c;
  const auto line = region.boundary_polyline();
  for (std::size_t i = 0; i < line.size(); ++i) c.add(static_cast<double>(i), line[i]);
  return c;
}

IFCChannel parse_channel(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("channel document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("channel document must be a JSON object");
  auto dim = [&](const char* key) -> std::size_t {
    if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 1)
      throw ParseError(std::string("channel document needs a positive integer field '") + key + "'");
    return doc[key].get<std::size_t>();
  };
  const std::size_t nx1 = dim("nx1"), nx2 = dim("nx2"), ny1 = dim("ny1"), ny2 = dim("ny2");
  if (!doc.contains("p") || !doc["p"].is_array()) throw ParseError("channel document needs an array field 'p'");
  std::vector<double> p;
  p.reserve(doc["p"].size());
  for (const auto& v : doc["p"]) {
    if (!v.is_number()) throw ParseError("channel entries must be numbers");
    p.push_back(v.get<double>());
  }
  try {
    return IFCChannel(nx1, nx2, ny1, ny2, std::move(p));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what());
  }
}

std::string channel_to_json(const IFCChannel& ch) {
  nlohmann::json doc;
  doc["nx1"] = ch.nx1();
  doc["nx2"] = ch.nx2();
  doc["ny1"] = ch.ny1();
  doc["ny2"] = ch.ny2();
  doc["p"] = std::vector<double>(ch.data().begin(), ch.data().end());
  return doc.dump(2) + "\n";
}

std::string render_svg(const std::string& title, const std::vector<SvgSeries>& series) {
  constexpr double W = 800, H = 600, L = 70, R = 20, T = 40, B = 60;
  double xmax = 0.0, ymax = 0.0;
  for (const auto& s : series)
    for (const auto& p : s.points) {
      xmax = std::max(xmax, p.r1);
      ymax = std::max(ymax, p.r2);
    }
  if (xmax <= 0.0) xmax = 1.0;
  if (ymax <= 0.0) ymax = 1.0;
  const double xs = nice_step(xmax * 1.05), ys = nice_step(ymax * 1.05);
  xmax = std::ceil(xmax * 1.05 / xs) * xs;
  ymax = std::ceil(ymax * 1.05 / ys) * ys;
  auto px = [&](double r1) { return L + (W - L - R) * r1 / xmax; };
  auto py = [&](double r2) { return H - B - (H - T - B) * r2 / ymax; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  o << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  o << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" << title
    << "</text>\n";
  o << "<g stroke=\"#ccc\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k * xs <= xmax + 1e-12; ++k) {
    const double x = px(k * xs);
    o << "<line x1=\"" << fixed(x, 2) << "\" y1=\"" << fixed(T, 2) << "\" x2=\"" << fixed(x, 2) << "\" y2=\""
      << fixed(H - B, 2) << "\"/>";
    o << "<text x=\"" << fixed(x, 2) << "\" y=\"" << fixed(H - B + 16, 2)
      << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"black\">" << format_number(k * xs) << "</text>\n";
  }
  for (int k = 0; k * ys <= ymax + 1e-12; ++k) {
    const double y = py(k * ys);
    o << "<line x1=\"" << fixed(L, 2) << "\" y1=\"" << fixed(y, 2) << "\" x2=\"" << fixed(W - R, 2) << "\" y2=\""
      << fixed(y, 2) << "\"/>";
    o << "<text x=\"" << fixed(L - 6, 2) << "\" y=\"" << fixed(y + 4, 2)
      << "\" text-anchor=\"end\" stroke=\"none\" fill=\"black\">" << format_number(k * ys) << "</text>\n";
  }
  o << "</g>\n";
  o << "<g stroke=\"black\" stroke-width=\"1.5\"><line x1=\"" << fixed(L, 2) << "\" y1=\"" << fixed(H - B, 2)
    << "\" x2=\"" << fixed(W - R, 2) << "\" y2=\"" << fixed(H - B, 2) << "\"/><line x1=\"" << fixed(L, 2)
    << "\" y1=\"" << fixed(T, 2) << "\" x2=\"" << fixed(L, 2) << "\" y2=\"" << fixed(H - B, 2) << "\"/></g>\n";
  o << "<text x=\"" << fixed((L + W - R) / 2, 2) << "\" y=\"" << fixed(H - 18, 2)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">R1 (bits/channel use)</text>\n";
  o << "<text x=\"18\" y=\"" << fixed((T + H - B) / 2, 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
    << "font-size=\"13\" transform=\"rotate(-90 18 " << fixed((T + H - B) / 2, 2)
    << ")\">R2 (bits/channel use)</text>\n";

  for (const auto& s : series) {
    if (s.markers) {
      o << "<g fill=\"" << s.color << "\">";
      for (const auto& p : s.points)
        o << "<circle cx=\"" << fixed(px(p.r1), 2) << "\" cy=\"" << fixed(py(p.r2), 2) << "\" r=\"2\"/>";
      o << "</g>\n";
    } else {
      o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < s.points.size(); ++i)
        o << (i ? " " : "") << fixed(px(s.points[i].r1), 2) << ',' << fixed(py(s.points[i].r2), 2);
      o << "\"/>\n";
    }
  }

  const double lx = W - R - 190, ly = T + 10;
  o << "<g font-family=\"sans-serif\" font-size=\"12\"><rect x=\"" << fixed(lx, 2) << "\" y=\"" << fixed(ly, 2)
    << "\" width=\"180\" height=\"" << fixed(8.0 + 18.0 * static_cast<double>(series.size()), 2)
    << "\" fill=\"white\" stroke=\"#888\"/>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = ly + 16 + 18.0 * static_cast<double>(i);
    o << "<line x1=\"" << fixed(lx + 8, 2) << "\" y1=\"" << fixed(y - 4, 2) << "\" x2=\"" << fixed(lx + 32, 2)
      << "\" y2=\"" << fixed(y - 4, 2) << "\" stroke=\"" << series[i].color << "\" stroke-width=\"3\"/>";
    o << "<text x=\"" << fixed(lx + 40, 2) << "\" y=\"" << fixed(y, 2) << "\">" << series[i].name << "</text>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace ifcdms
