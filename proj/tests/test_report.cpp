#include <doctest.h>

#include "qclone/report.hpp"
#include "qclone/verify.hpp"

using namespace qclone;

namespace {

RunManifest fixed_manifest() {
    RunManifest m;
    m.command = "boundary";
    m.d = 2;
    m.merit = "F";
    m.samples = 16;
    m.seed = 7;
    m.timestamp = "2000-01-01T00:00:00Z";
    return m;
}

}  // namespace

TEST_CASE("CSV: manifest header, columns, 17-digit floats, determinism") {
    const auto pts = sample_boundary(MeritKind::F, 2, 16);
    std::vector<CsvRow> rows;
    for (const auto& p : pts) rows.push_back({p.x1, p.x2, "F", p.corner ? "corner" : "boundary"});
    rows.push_back({0.0, 0.0, "F", "origin"});

    const std::string a = render_csv(fixed_manifest(), rows);
    const std::string b = render_csv(fixed_manifest(), rows);
    CHECK(a == b);  // byte identical under the same manifest

    CHECK(a.rfind("# command=boundary", 0) == 0);
    CHECK(a.find("# seed=7\n") != std::string::npos);
    CHECK(a.find("x1,x2,kind,source\n") != std::string::npos);
    CHECK(a.find(",corner\n") != std::string::npos);
    CHECK(a.find(",origin\n") != std::string::npos);

    // corner coordinate 1/4 appears as the exact closed form
    CHECK(a.find("1,0.25,F,corner") != std::string::npos);

    // 17 significant digits survive a parse round trip
    const std::string s = format_double17(1.0 / 3.0);
    CHECK(std::stod(s) == 1.0 / 3.0);
    CHECK(format_double17(0.25) == "0.25");
    CHECK(format_double17(1.0) == "1");
}

TEST_CASE("SVG: self-contained, manifest embedded, formula annotation") {
    const auto pts = sample_boundary(MeritKind::One, 2, 64);
    RunManifest m = fixed_manifest();
    m.merit = "one";
    const std::string svg = render_boundary_svg(m, MeritKind::One, 2, pts);
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") !=
          std::string::npos);
    CHECK(svg.find("command=boundary") != std::string::npos);
    CHECK(svg.find("boundary:") != std::string::npos);
    CHECK(svg.find("(sqrt(y1)+sqrt(y2))^2/(d+1)") != std::string::npos);
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    // no external references
    CHECK(svg.find("href") == std::string::npos);
    CHECK(svg.find("url(") == std::string::npos);
    // deterministic
    CHECK(svg == render_boundary_svg(m, MeritKind::One, 2, pts));
}

TEST_CASE("verification battery passes at d = 2 with a fast profile") {
    VerifyOptions opt;
    opt.dims = {2};
    opt.seed = 99;
    const auto results = run_verification(opt);
    CHECK(results.size() > 20);
    for (const auto& r : results) {
        INFO(r.name, " residual=", r.residual, " tol=", r.tolerance);
        CHECK(r.pass);
    }
}

TEST_CASE("tolerance override forces failures") {
    VerifyOptions opt;
    opt.dims = {2};
    opt.tolerance_override = 0.0;
    const auto results = run_verification(opt);
    bool any_fail = false;
    for (const auto& r : results) any_fail = any_fail || !r.pass;
    CHECK(any_fail);
}
