#pragma once

// CSV and SVG output for limit curves.

#include <iosfwd>
#include <string>
#include <vector>

#include "angelesco/system.hpp"

namespace angelesco {

// Fixed decimal notation, 12 significant digits, no exponent.
std::string format_decimal(double x);

inline constexpr const char* kCsvHeader = "s,A1,A2,B1,B2";

void write_csv(std::ostream& os, const LimitCurve& curve);
void write_csv(const std::string& path, const LimitCurve& curve);

// Throws InputError on a malformed file.
LimitCurve read_csv(std::istream& is);
LimitCurve read_csv(const std::string& path);

struct PlotSeries {
  std::string label;
  LimitCurve curve;
};

// Four panels (A1, A2, B1, B2) with one polyline per series. Series whose
// grid differs from the first one are resampled onto it; a warning is
// written into an XML comment.
std::string render_svg(const std::vector<PlotSeries>& series, const std::string& title = "");

}  // namespace angelesco
