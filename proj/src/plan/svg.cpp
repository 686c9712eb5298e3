#include "ltlplan/plan/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace ltlplan::plan {

namespace {

constexpr double kPi = std::numbers::pi;

struct Style {
  double px_per_m = 120.0;
  double margin_m = 0.4;
  const char* background = "#ffffff";
  const char* region_fill = "#9ed99e";
  const char* region_stroke = "#2e7d32";
  double region_opacity = 0.55;
  const char* region_label = "#1b5e20";
  const char* right_fill = "#d62728";
  const char* left_fill = "#1f4fd6";
  const char* arrow = "#000000";
  const char* number = "#8b4513";
  const char* goal = "#000000";
  double star_outer_m = 0.06;
  double star_inner_m = 0.026;
  double circle_m = 0.045;
  double arrow_m = 0.16;
  double head_m = 0.04;
  double font_px = 11.0;
};

constexpr Style kStyle{};

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
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

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

class Canvas {
 public:
  Canvas(double xmin, double xmax, double ymin, double ymax)
      : xmin_(xmin), ymax_(ymax), width_((xmax - xmin) * kStyle.px_per_m),
        height_((ymax - ymin) * kStyle.px_per_m) {}

  double px(double x) const { return (x - xmin_) * kStyle.px_per_m; }
  double py(double y) const { return (ymax_ - y) * kStyle.px_per_m; }
  double width() const { return width_; }
  double height() const { return height_; }

  std::string point(double x, double y) const { return num(px(x)) + "," + num(py(y)); }

 private:
  double xmin_;
  double ymax_;
  double width_;
  double height_;
};

void arrow(std::ostream& out, const Canvas& cv, double x, double y, double theta) {
  const double ex = x + kStyle.arrow_m * std::cos(theta);
  const double ey = y + kStyle.arrow_m * std::sin(theta);
  out << "    <line x1=\"" << num(cv.px(x)) << "\" y1=\"" << num(cv.py(y)) << "\" x2=\""
      << num(cv.px(ex)) << "\" y2=\"" << num(cv.py(ey)) << "\" stroke=\"" << kStyle.arrow
      << "\" stroke-width=\"1.5\"/>\n";
  const double h = kStyle.head_m;
  const double lx = ex - h * std::cos(theta - kPi / 7);
  const double ly = ey - h * std::sin(theta - kPi / 7);
  const double rx = ex - h * std::cos(theta + kPi / 7);
  const double ry = ey - h * std::sin(theta + kPi / 7);
  out << "    <polygon points=\"" << cv.point(ex, ey) << " " << cv.point(lx, ly) << " "
      << cv.point(rx, ry) << "\" fill=\"" << kStyle.arrow << "\"/>\n";
}

}  // namespace

std::string render_svg(const FootstepPlan& plan, const model::Scenario& s) {
  double xmin = s.goal.x;
  double xmax = s.goal.x;
  double ymin = s.goal.y;
  double ymax = s.goal.y;
  auto grow = [&](double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (const auto& r : s.regions) {
    for (const auto& v : r.vertices()) grow(v.x, v.y);
  }
  for (const auto& st : plan.steps) grow(st.x, st.y);
  const double m = kStyle.margin_m;
  Canvas cv(xmin - m, xmax + m, ymin - m, ymax + m);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(cv.width()) << "\" height=\""
      << num(cv.height()) << "\" viewBox=\"0 0 " << num(cv.width()) << " " << num(cv.height())
      << "\" font-family=\"sans-serif\">\n";
  out << "  <title>" << escape(s.name.empty() ? "footstep plan" : s.name) << "</title>\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"" << kStyle.background << "\"/>\n";

  for (const auto& r : s.regions) {
    out << "  <g class=\"region\" data-name=\"" << escape(r.name()) << "\">\n";
    out << "    <polygon points=\"";
    double cx = 0.0;
    double cy = 0.0;
    const auto& vs = r.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      out << (i ? " " : "") << cv.point(vs[i].x, vs[i].y);
      cx += vs[i].x / static_cast<double>(vs.size());
      cy += vs[i].y / static_cast<double>(vs.size());
    }
    out << "\" fill=\"" << kStyle.region_fill << "\" fill-opacity=\"" << num(kStyle.region_opacity)
        << "\" stroke=\"" << kStyle.region_stroke << "\" stroke-width=\"1\"/>\n";
    out << "    <text x=\"" << num(cv.px(cx)) << "\" y=\"" << num(cv.py(cy))
        << "\" text-anchor=\"middle\" font-size=\"" << num(kStyle.font_px + 3) << "\" fill=\""
        << kStyle.region_label << "\">" << escape(r.name()) << "</text>\n";
    out << "  </g>\n";
  }

  for (const auto& st : plan.steps) {
    const bool right = st.foot == model::Foot::Right;
    out << "  <g class=\"footstep\" data-step=\"" << st.index << "\" data-foot=\""
        << (right ? "R" : "L") << "\">\n";
    if (right) {
      out << "    <polygon points=\"";
      for (int k = 0; k < 10; ++k) {
        double rad = k % 2 == 0 ? kStyle.star_outer_m : kStyle.star_inner_m;
        double ang = kPi / 2 + k * kPi / 5;
        out << (k ? " " : "") << cv.point(st.x + rad * std::cos(ang), st.y + rad * std::sin(ang));
      }
      out << "\" fill=\"" << kStyle.right_fill << "\"/>\n";
    } else {
      out << "    <circle cx=\"" << num(cv.px(st.x)) << "\" cy=\"" << num(cv.py(st.y)) << "\" r=\""
          << num(kStyle.circle_m * kStyle.px_per_m) << "\" fill=\"" << kStyle.left_fill << "\"/>\n";
    }
    arrow(out, cv, st.x, st.y, st.theta);
    out << "    <text x=\"" << num(cv.px(st.x) + 7) << "\" y=\"" << num(cv.py(st.y) - 7)
        << "\" font-size=\"" << num(kStyle.font_px) << "\" fill=\"" << kStyle.number << "\">"
        << st.index << "</text>\n";
    out << "  </g>\n";
  }

  out << "  <g class=\"goal\">\n";
  const double gr = kStyle.star_outer_m * kStyle.px_per_m;
  out << "    <circle cx=\"" << num(cv.px(s.goal.x)) << "\" cy=\"" << num(cv.py(s.goal.y)) << "\" r=\""
      << num(gr) << "\" fill=\"none\" stroke=\"" << kStyle.goal << "\" stroke-width=\"1.5\" "
      << "stroke-dasharray=\"3,2\"/>\n";
  arrow(out, cv, s.goal.x, s.goal.y, s.goal.theta);
  out << "    <text x=\"" << num(cv.px(s.goal.x) + gr + 3) << "\" y=\"" << num(cv.py(s.goal.y) + 4)
      << "\" font-size=\"" << num(kStyle.font_px) << "\" fill=\"" << kStyle.goal
      << "\">goal</text>\n";
  out << "  </g>\n";
  out << "</svg>\n";
  return out.str();
}

void write_svg(const FootstepPlan& plan, const model::Scenario& s,
               const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << render_svg(plan, s);
}

}  // namespace ltlplan::plan
