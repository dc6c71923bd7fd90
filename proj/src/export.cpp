#include "intstab/export.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace intstab {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Maps a data rectangle onto an SVG canvas, y axis pointing up.
struct Canvas {
  double x0, x1, y0, y1;
  double size = 600.0, margin = 20.0;
  double scale() const { return size / std::max(x1 - x0, y1 - y0); }
  double X(double x) const { return margin + (x - x0) * scale(); }
  double Y(double y) const { return margin + (y1 - y) * scale(); }
  double width() const { return 2 * margin + (x1 - x0) * scale(); }
  double height() const { return 2 * margin + (y1 - y0) * scale(); }
};

void rect(std::ostringstream& os, const Canvas& c, double xl, double xh, double yl, double yh, const char* fill,
          const char* stroke, const char* extra = "") {
  os << "<rect x=\"" << px(c.X(xl)) << "\" y=\"" << px(c.Y(yh)) << "\" width=\"" << px(c.X(xh) - c.X(xl))
     << "\" height=\"" << px(c.Y(yl) - c.Y(yh)) << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"" << extra
     << "/>\n";
}

std::string open_svg(const Canvas& c) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(c.width()) << "\" height=\"" << px(c.height())
     << "\" viewBox=\"0 0 " << px(c.width()) << " " << px(c.height()) << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << px(c.width()) << "\" height=\"" << px(c.height())
     << "\" fill=\"white\"/>\n";
  return os.str();
}

Canvas fit(double xl, double xh, double yl, double yh) {
  // Degenerate extents still get a visible canvas.
  const double pad = 0.05 * std::max({xh - xl, yh - yl, 1e-300});
  return Canvas{xl - pad, xh + pad, yl - pad, yh + pad};
}

}  // namespace

std::string paving_csv(const PavingResult& result) {
  std::ostringstream os;
  for (std::size_t a = 0; a < result.domain.size(); ++a) {
    os << "m" << a + 1 << "_lo,m" << a + 1 << "_hi,";
  }
  os << "status,q,alpha\n";
  for (const ParamCell& cell : result.cells) {
    for (const Interval& m : cell.m_box) os << num(m.lo()) << ',' << num(m.hi()) << ',';
    os << to_string(cell.status) << ',' << cell.q << ',' << num(cell.alpha) << '\n';
  }
  return os.str();
}

std::string paving_svg(const PavingResult& result) {
  const Box& d = result.domain;
  if (d.size() == 0 || d.size() > 2) throw Error(ErrorCode::bad_projection, "paving plots need 1 or 2 parameters");
  const bool plane = d.size() == 2;
  const double yl = plane ? d[1].lo() : 0.0;
  const double yh = plane ? d[1].hi() : 0.1 * (d[0].hi() - d[0].lo());
  Canvas c = fit(d[0].lo(), d[0].hi(), yl, yh);
  std::ostringstream os;
  os << open_svg(c);
  for (const ParamCell& cell : result.cells) {
    const bool ok = cell.status == Verdict::proven_stable;
    rect(os, c, cell.m_box[0].lo(), cell.m_box[0].hi(), plane ? cell.m_box[1].lo() : yl,
         plane ? cell.m_box[1].hi() : yh, ok ? "#2ca02c" : "#d62728", "none");
  }
  rect(os, c, d[0].lo(), d[0].hi(), yl, yh, "none", "black", " stroke-width=\"1\"");
  os << "</svg>\n";
  return os.str();
}

std::string trace_csv(const CentredTrace& trace) {
  const std::size_t n = trace.p.size();
  std::ostringstream os;
  os << "k";
  for (const char* name : {"z", "fc"}) {
    for (const char* side : {"lo", "hi"}) {
      for (std::size_t i = 0; i < n; ++i) os << ',' << name << i + 1 << '_' << side;
    }
  }
  os << '\n';
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    os << k;
    for (const Box* b : {&trace.steps[k].z, &trace.steps[k].fc}) {
      for (std::size_t i = 0; i < n; ++i) os << ',' << num((*b)[i].lo());
      for (std::size_t i = 0; i < n; ++i) os << ',' << num((*b)[i].hi());
    }
    os << '\n';
  }
  return os.str();
}

std::string trace_svg(const StabilityReport& report, std::pair<std::size_t, std::size_t> proj) {
  const std::size_t n = report.initial_box.size();
  const auto [i, j] = proj;
  const auto& steps = report.trace.steps;
  std::vector<Box> images;  // fc_k in absolute coordinates, k >= 1
  for (std::size_t k = 1; k < steps.size(); ++k) images.push_back(steps[k].fc + report.xbar);
  const Box& x0 = report.initial_box;

  std::ostringstream os;
  if (n == 1) {
    if (i != 0) throw Error(ErrorCode::bad_projection, "coordinate index out of range");
    // One bar per step, x0 first.
    double lo = x0[0].lo(), hi = x0[0].hi();
    for (const Box& b : images) {
      lo = std::min(lo, b[0].lo());
      hi = std::max(hi, b[0].hi());
    }
    const double rows = static_cast<double>(images.size() + 1);
    const double bar = (hi - lo) / std::max(rows, 4.0);
    Canvas c = fit(lo, hi, -bar * rows, 0.0);
    os << open_svg(c);
    rect(os, c, x0[0].lo(), x0[0].hi(), -bar * 0.8, 0.0, "#dddddd", "black");
    for (std::size_t k = 0; k < images.size(); ++k) {
      const double top = -bar * static_cast<double>(k + 1);
      rect(os, c, images[k][0].lo(), images[k][0].hi(), top - bar * 0.8, top, "#1f77b4", "black",
           " fill-opacity=\"0.6\"");
    }
    os << "</svg>\n";
    return os.str();
  }
  if (i >= n || j >= n || i == j) throw Error(ErrorCode::bad_projection, "coordinate pair out of range");

  double xl = x0[i].lo(), xh = x0[i].hi(), yl = x0[j].lo(), yh = x0[j].hi();
  auto grow = [&](const Box& b) {
    xl = std::min(xl, b[i].lo());
    xh = std::max(xh, b[i].hi());
    yl = std::min(yl, b[j].lo());
    yh = std::max(yh, b[j].hi());
  };
  for (const Box& b : images) grow(b);
  for (const Box& b : report.stage_images) grow(b);
  Canvas c = fit(xl, xh, yl, yh);
  os << open_svg(c);
  rect(os, c, x0[i].lo(), x0[i].hi(), x0[j].lo(), x0[j].hi(), "#eeeeee", "black", " stroke-width=\"2\"");
  for (const Box& b : report.stage_images) {
    rect(os, c, b[i].lo(), b[i].hi(), b[j].lo(), b[j].hi(), "none", "#7f7f7f", " stroke-dasharray=\"4 2\"");
  }
  for (const Box& b : images) {
    rect(os, c, b[i].lo(), b[i].hi(), b[j].lo(), b[j].hi(), "#1f77b4", "#1f77b4", " fill-opacity=\"0.25\"");
  }
  os << "</svg>\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot open " + path + " for writing");
  out << content;
  if (!out.flush()) throw Error(ErrorCode::io_error, "cannot write " + path);
}

}  // namespace intstab
