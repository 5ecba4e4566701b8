// Copyright 2026 The qikit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qikit/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qikit {

namespace {

constexpr int kCell = 42;     // px per matrix cell
constexpr int kMarginL = 34;  // room for row labels
constexpr int kMarginT = 30;  // room for the title
constexpr int kMarginB = 24;  // room for column labels
constexpr int kGap = 26;      // horizontal gap between branch panels

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  // Avoid the "-0.00" rendering.
  if (std::string_view(buf) == "-0.00") return "0.00";
  return buf;
}

// Diverging scale clamped to [-1, 1]: blue for negative, red for positive,
// white at zero.
std::string cell_color(double v) {
  v = std::clamp(v, -1.0, 1.0);
  int r = 255, g = 255, b = 255;
  if (v >= 0.0) {
    r = 255 + static_cast<int>(std::lround((178 - 255) * v));
    g = 255 + static_cast<int>(std::lround((24 - 255) * v));
    b = 255 + static_cast<int>(std::lround((43 - 255) * v));
  } else {
    r = 255 + static_cast<int>(std::lround((33 - 255) * -v));
    g = 255 + static_cast<int>(std::lround((102 - 255) * -v));
    b = 255 + static_cast<int>(std::lround((172 - 255) * -v));
  }
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

void render_panel(std::ostringstream& svg, const Ptm& ptm,
                  const std::string& title, int x0, int y0) {
  const auto d2 = static_cast<int>(ptm.dim());
  const int n = ptm.num_qubits();

  svg << "<text x=\"" << x0 + kMarginL + d2 * kCell / 2 << "\" y=\""
      << y0 + kMarginT - 12
      << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\""
         "monospace\">"
      << xml_escape(title) << "</text>\n";

  for (int r = 0; r < d2; ++r) {
    for (int c = 0; c < d2; ++c) {
      const double v = ptm(r, c);
      const int x = x0 + kMarginL + c * kCell;
      const int y = y0 + kMarginT + r * kCell;
      svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell
          << "\" height=\"" << kCell << "\" fill=\"" << cell_color(v)
          << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
      const bool dark = std::abs(std::clamp(v, -1.0, 1.0)) > 0.6;
      svg << "<text x=\"" << x + kCell / 2 << "\" y=\"" << y + kCell / 2 + 4
          << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\""
             "monospace\" fill=\""
          << (dark ? "#ffffff" : "#000000") << "\">" << fmt(v) << "</text>\n";
    }
  }

  for (int r = 0; r < d2; ++r) {
    svg << "<text x=\"" << x0 + kMarginL - 6 << "\" y=\""
        << y0 + kMarginT + r * kCell + kCell / 2 + 4
        << "\" text-anchor=\"end\" font-size=\"11\" font-family=\""
           "monospace\">"
        << pauli_label(static_cast<std::size_t>(r), n) << "</text>\n";
  }
  for (int c = 0; c < d2; ++c) {
    svg << "<text x=\"" << x0 + kMarginL + c * kCell + kCell / 2 << "\" y=\""
        << y0 + kMarginT + d2 * kCell + 16
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\""
           "monospace\">"
        << pauli_label(static_cast<std::size_t>(c), n) << "</text>\n";
  }
}

std::string render_panels(const std::vector<std::pair<std::string, const Ptm*>>&
                              panels) {
  const auto d2 = static_cast<int>(panels.front().second->dim());
  const int panel_w = kMarginL + d2 * kCell;
  const int width = static_cast<int>(panels.size()) * panel_w +
                    (static_cast<int>(panels.size()) - 1) * kGap + kGap;
  const int height = kMarginT + d2 * kCell + kMarginB;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n"
      << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";
  int x0 = kGap / 2;
  for (const auto& [title, ptm] : panels) {
    render_panel(svg, *ptm, title, x0, 0);
    x0 += panel_w + kGap;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

std::string render_ptm_svg(const Ptm& ptm, const std::string& title) {
  return render_panels({{title, &ptm}});
}

std::string render_instrument_svg(const QuantumInstrument& instr) {
  std::vector<std::pair<std::string, const Ptm*>> panels;
  panels.reserve(instr.num_outcomes());
  for (const auto& outcome : instr.outcomes()) {
    panels.emplace_back("outcome " + outcome.label, &outcome.ptm);
  }
  return render_panels(panels);
}

}  // namespace qikit
