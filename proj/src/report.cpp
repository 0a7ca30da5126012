#include "qclone/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

namespace qclone {

std::string RunManifest::now_utc_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<std::pair<std::string, std::string>> RunManifest::fields() const {
    return {
        {"command", command},
        {"d", std::to_string(d)},
        {"merit", merit},
        {"samples", std::to_string(samples)},
        {"seed", std::to_string(seed)},
        {"tool_version", tool_version},
        {"timestamp", timestamp},
    };
}

std::string format_double17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string render_csv(const RunManifest& manifest, const std::vector<CsvRow>& rows) {
    std::ostringstream out;
    for (const auto& [k, v] : manifest.fields()) out << "# " << k << "=" << v << "\n";
    out << "x1,x2,kind,source\n";
    for (const auto& r : rows)
        out << format_double17(r.x1) << "," << format_double17(r.x2) << "," << r.kind << ","
            << r.source << "\n";
    return out.str();
}

namespace {

using Pt = std::pair<double, double>;

double cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

std::vector<Pt> convex_hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Pt> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

std::string boundary_formula_text(MeritKind kind, int d) {
    std::ostringstream s;
    s << "(sqrt(y1)+sqrt(y2))^2/(d+1) + (sqrt(y1)-sqrt(y2))^2/(d-1) = 2/d,  d=" << d;
    switch (kind) {
        case MeritKind::F:
        case MeritKind::Diamond:
            s << ",  y = x";
            break;
        case MeritKind::One:
        case MeritKind::Inf:
            s << ",  y = 1 + (1+d)/d (x-1)";
            break;
        case MeritKind::Two:
            s << ",  y = 1 + (d^2-1)/d^2 sqrt(d/(d-1)) (x-1)";
            break;
    }
    return s.str();
}

std::string axis_label(MeritKind kind, int i) {
    std::ostringstream s;
    s << "d^" << (kind == MeritKind::F ? "F"
                  : kind == MeritKind::One ? "1"
                  : kind == MeritKind::Two ? "2"
                  : kind == MeritKind::Inf ? "inf"
                                           : "dia")
      << "(T" << i << ", id)";
    return s.str();
}

std::string fmt_coord(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string render_boundary_svg(const RunManifest& manifest, MeritKind kind, int d,
                                const std::vector<BoundaryPoint>& pts) {
    constexpr double kSize = 640.0, kMargin = 80.0;
    const double plot = kSize - 2.0 * kMargin;
    const auto px = [&](double x) { return kMargin + x * plot; };
    const auto py = [&](double y) { return kSize - kMargin - y * plot; };

    std::vector<Pt> all{{0.0, 0.0}};
    for (const auto& p : pts) all.emplace_back(p.x1, p.x2);
    const auto hull = convex_hull(std::move(all));

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<!--\n";
    for (const auto& [k, v] : manifest.fields()) svg << k << "=" << v << "\n";
    svg << "-->\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize
        << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
    svg << "  <rect width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";

    // filled achievable region
    svg << "  <polygon points=\"";
    for (const auto& [x, y] : hull) svg << fmt_coord(px(x)) << "," << fmt_coord(py(y)) << " ";
    svg << "\" fill=\"#4477aa\" fill-opacity=\"0.25\" stroke=\"#4477aa\" stroke-width=\"1\"/>\n";

    // upper boundary polyline
    svg << "  <polyline points=\"";
    for (const auto& p : pts) svg << fmt_coord(px(p.x1)) << "," << fmt_coord(py(p.x2)) << " ";
    svg << "\" fill=\"none\" stroke=\"#223355\" stroke-width=\"2\"/>\n";

    // corner markers
    for (const auto& p : pts)
        if (p.corner)
            svg << "  <circle cx=\"" << fmt_coord(px(p.x1)) << "\" cy=\"" << fmt_coord(py(p.x2))
                << "\" r=\"4\" fill=\"#aa3311\"/>\n";

    // axes
    svg << "  <line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1.05) << "\" y2=\""
        << py(0) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "  <line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0) << "\" y2=\""
        << py(1.05) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    const double partner = corner_partner_value(kind, d);
    for (double tick : {0.0, partner, 1.0}) {
        svg << "  <line x1=\"" << fmt_coord(px(tick)) << "\" y1=\"" << py(0) << "\" x2=\""
            << fmt_coord(px(tick)) << "\" y2=\"" << py(0) + 6 << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << fmt_coord(px(tick)) << "\" y=\"" << py(0) + 22
            << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt_coord(tick) << "</text>\n";
        svg << "  <line x1=\"" << px(0) - 6 << "\" y1=\"" << fmt_coord(py(tick)) << "\" x2=\""
            << px(0) << "\" y2=\"" << fmt_coord(py(tick)) << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << px(0) - 10 << "\" y=\"" << fmt_coord(py(tick) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << fmt_coord(tick) << "</text>\n";
    }

    svg << "  <text x=\"" << px(0.5) << "\" y=\"" << kSize - 20
        << "\" font-size=\"15\" text-anchor=\"middle\">" << axis_label(kind, 1) << "</text>\n";
    svg << "  <text x=\"20\" y=\"" << py(0.5) << "\" font-size=\"15\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 20 " << py(0.5) << ")\">" << axis_label(kind, 2)
        << "</text>\n";

    svg << "  <text x=\"" << px(0.02) << "\" y=\"" << py(1.04)
        << "\" font-size=\"12\" fill=\"#333333\">boundary: " << boundary_formula_text(kind, d)
        << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace qclone
