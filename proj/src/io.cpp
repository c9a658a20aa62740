#include "angelesco/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "angelesco/crossval.hpp"
#include "angelesco/errors.hpp"

namespace angelesco {

std::string format_decimal(double x) {
  if (!std::isfinite(x)) throw InputError("cannot format a non-finite value");
  if (x == 0.0) return "0";
  // Exponent after rounding to 12 significant digits.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  const char* e = std::strchr(buf, 'e');
  const int exponent = std::atoi(e + 1);
  const int decimals = std::max(0, 11 - exponent);
  std::string out(512, '\0');
  const int n = std::snprintf(out.data(), out.size(), "%.*f", decimals, x);
  out.resize(static_cast<std::size_t>(n));
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  if (out == "-0") out = "0";
  return out;
}

void write_csv(std::ostream& os, const LimitCurve& curve) {
  os << kCsvHeader << '\n';
  for (const auto& p : curve.points) {
    os << format_decimal(p.s) << ',' << format_decimal(p.A1) << ',' << format_decimal(p.A2) << ','
       << format_decimal(p.B1) << ',' << format_decimal(p.B2) << '\n';
  }
}

void write_csv(const std::string& path, const LimitCurve& curve) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "' for writing");
  write_csv(f, curve);
  if (!f) throw InputError("failed writing '" + path + "'");
}

namespace {

double parse_field(const std::string& tok, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != tok.size() || !std::isfinite(v))
    throw InputError("malformed CSV value '" + tok + "' on line " + std::to_string(line));
  return v;
}

}  // namespace

LimitCurve read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw InputError("CSV header must be '" + std::string(kCsvHeader) + "'");
  LimitCurve c;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, 5> v{};
    std::stringstream ss(line);
    std::string tok;
    std::size_t i = 0;
    while (std::getline(ss, tok, ',')) {
      if (i >= 5) throw InputError("too many CSV fields on line " + std::to_string(lineno));
      v[i++] = parse_field(tok, lineno);
    }
    if (i != 5) throw InputError("expected 5 CSV fields on line " + std::to_string(lineno));
    c.points.push_back({v[0], v[1], v[2], v[3], v[4]});
  }
  for (std::size_t i = 1; i < c.points.size(); ++i)
    if (!(c.points[i].s > c.points[i - 1].s))
      throw InputError("CSV rows must have strictly increasing s");
  if (c.points.empty()) throw InputError("CSV has no data rows");
  return c;
}

LimitCurve read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "'");
  return read_csv(f);
}

namespace {

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#ff7f0e", "#d62728",
                                              "#9467bd", "#2ca02c", "#8c564b"};

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string num(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << x;
  return os.str();
}

std::string tick_label(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << x;
  return os.str();
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const std::string& title) {
  if (series.empty()) throw InputError("nothing to plot");
  const double panel_w = 420, panel_h = 300, margin_l = 60, margin_t = 40, gap = 30;
  const double plot_w = panel_w - margin_l - 20, plot_h = panel_h - margin_t - 40;
  const double width = 2 * panel_w + gap, height = 2 * panel_h + gap + 60;

  // Common grid = first series.
  const LimitCurve& base = series.front().curve;
  std::vector<std::string> warnings;
  std::vector<LimitCurve> curves;
  for (const auto& ser : series) {
    bool same = ser.curve.points.size() == base.points.size();
    for (std::size_t i = 0; same && i < base.points.size(); ++i)
      same = ser.curve.points[i].s == base.points[i].s;
    if (same) {
      curves.push_back(ser.curve);
      continue;
    }
    warnings.push_back("series '" + ser.label + "' resampled onto the grid of '" +
                       series.front().label + "'");
    LimitCurve r;
    const double lo = ser.curve.points.front().s, hi = ser.curve.points.back().s;
    for (const auto& p : base.points)
      if (p.s >= lo && p.s <= hi) r.points.push_back(sample(ser.curve, p.s));
    curves.push_back(std::move(r));
  }

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
     << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height)
     << "\">\n";
  for (const auto& w : warnings) os << "<!-- warning: " << xml_escape(w) << " -->\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    os << "<text x=\"" << num(width / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"16\">" << xml_escape(title) << "</text>\n";

  for (std::size_t f = 0; f < 4; ++f) {
    const double ox = (f % 2) * (panel_w + gap);
    const double oy = 30 + (f / 2) * (panel_h + gap);
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const auto& c : curves)
      for (const auto& p : c.points) {
        const double v = as_array(p)[f];
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
    if (!(ymax > ymin)) {
      ymin -= 0.5;
      ymax += 0.5;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
    const double x0 = ox + margin_l, y0 = oy + margin_t;
    auto X = [&](double s) { return x0 + s * plot_w; };
    auto Y = [&](double v) { return y0 + (ymax - v) / (ymax - ymin) * plot_h; };

    os << "<g id=\"panel-" << kFunctionNames[f] << "\">\n";
    os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(plot_w)
       << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(x0 + plot_w / 2) << "\" y=\"" << num(oy + 25)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">Function "
       << kFunctionNames[f] << "(s)</text>\n";
    for (int t = 0; t <= 4; ++t) {
      const double s = t / 4.0;
      const double v = ymin + (ymax - ymin) * t / 4.0;
      os << "<line x1=\"" << num(X(s)) << "\" y1=\"" << num(y0 + plot_h) << "\" x2=\"" << num(X(s))
         << "\" y2=\"" << num(y0 + plot_h + 5) << "\" stroke=\"black\"/>\n";
      os << "<text x=\"" << num(X(s)) << "\" y=\"" << num(y0 + plot_h + 18)
         << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << tick_label(s)
         << "</text>\n";
      os << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(Y(v)) << "\" x2=\"" << num(x0)
         << "\" y2=\"" << num(Y(v)) << "\" stroke=\"black\"/>\n";
      os << "<text x=\"" << num(x0 - 8) << "\" y=\"" << num(Y(v) + 3)
         << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << tick_label(v)
         << "</text>\n";
    }
    for (std::size_t c = 0; c < curves.size(); ++c) {
      os << "<polyline fill=\"none\" stroke=\"" << kPalette[c % kPalette.size()]
         << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < curves[c].points.size(); ++i) {
        const auto& p = curves[c].points[i];
        if (i) os << ' ';
        os << num(X(p.s)) << ',' << num(Y(as_array(p)[f]));
      }
      os << "\"/>\n";
    }
    os << "</g>\n";
  }

  // Legend.
  const double ly = height - 25;
  double lx = 40;
  for (std::size_t c = 0; c < series.size(); ++c) {
    os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 25)
       << "\" y2=\"" << num(ly) << "\" stroke=\"" << kPalette[c % kPalette.size()]
       << "\" stroke-width=\"3\"/>\n";
    os << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4)
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(series[c].label)
       << "</text>\n";
    lx += 40 + 8.0 * static_cast<double>(series[c].label.size()) + 30;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace angelesco
