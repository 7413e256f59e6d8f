#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "segspec/cli.hpp"
#include "helpers.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace segspec;
using namespace segspec::testutil;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("segspec_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        auto p = path / name;
        std::ofstream f(p);
        f << content;
        return p.string();
    }
};

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    int rc = dispatch(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return rc;
}

}  // namespace

TEST_CASE("json round trips are canonical") {
    // Measures.
    Measure rho = unit_cross();
    Json j1 = measure_to_json(rho);
    Measure back = measure_from_json(j1);
    CHECK(measure_to_json(back) == j1);

    // Irrational scalars use the object form.
    ExactScalar alpha(Rational(1, 2), Rational(-3, 7));
    Json js = scalar_to_json(alpha);
    CHECK(js.is_object());
    CHECK(scalar_from_json(js) == alpha);
    CHECK(scalar_to_json(scalar_from_json(js)) == js);

    // Rational scalars stay strings.
    CHECK(scalar_to_json(ExactScalar(Rational(3, 4))) == Json("3/4"));
    CHECK(scalar_from_json(Json("3/4")) == ExactScalar(Rational(3, 4)));
    CHECK(scalar_from_json(Json(5)) == ExactScalar(5));

    // Spectra.
    SpectrumSpec spec(2, {pt(0, 0), pt(rat(1, 2), rat(-1, 2))}, {pt(1, -1)});
    Json j2 = spectrum_to_json(spec);
    CHECK(spectrum_to_json(spectrum_from_json(j2)) == j2);

    // Cross configs with provenance maps.
    CrossConfig c(1, 0, 1, 1, AffineMap{Mat2(1, 0, 0, 1), Vec(rat(1, 3), rat(0))});
    Json j3 = cross_config_to_json(c);
    CrossConfig c2 = cross_config_from_json(j3);
    CHECK(cross_config_to_json(c2) == j3);
}

TEST_CASE("classify command verdicts and exit codes") {
    TempDir tmp;
    std::string spectral = tmp.file("cross_0011.json",
                                    measure_to_json(unit_cross()).dump());
    std::string out;
    CHECK(run({"classify", "--input", spectral}, &out) == 0);
    Json j = Json::parse(out);
    CHECK(j.at("schema") == "segment-spectra/1");
    CHECK(j.at("spectral") == true);
    CHECK(j.at("geometry") == "nonparallel");

    std::string bad = tmp.file("sym.json",
                               measure_to_json(cross_measure(rat(-1, 2), rat(-1, 2), 1, 1)).dump());
    CHECK(run({"classify", "--input", bad}, &out) == 1);
    CHECK(Json::parse(out).at("spectral") == false);

    std::string err;
    CHECK(run({"classify", "--input", "/nonexistent.json"}, &out, &err) == 3);
    CHECK(!err.empty());
    CHECK(run({"classify", "--bogus-flag"}, &out, &err) == 3);
}

TEST_CASE("spectrum command from a config and from a measure") {
    TempDir tmp;
    Json cfg;
    cfg["t1"] = "0";
    cfg["t2"] = "0";
    cfg["T1"] = "3/2";
    cfg["T2"] = "1/2";
    std::string cfg_path = tmp.file("cfg.json", cfg.dump());
    std::string out;
    CHECK(run({"spectrum", "--config", cfg_path}, &out) == 0);
    Json j = Json::parse(out);
    REQUIRE(j.at("spectra").size() == 1);
    CHECK(j.at("spectra")[0].at("lattice")[0][0] == Json("1/2"));

    std::string pair = tmp.file(
        "pair.json",
        measure_to_json(Measure::segments_only(
                            2, {SegmentPiece{pt(0, 0), pt(1, 0), rat(1, 2)},
                                SegmentPiece{pt(0, 1), pt(1, 1), rat(1, 2)}}))
            .dump());
    CHECK(run({"spectrum", "--input", pair, "--kmax", "2"}, &out) == 0);
    CHECK(Json::parse(out).at("spectra").size() == 3);  // k = 1, 2 and the interval projection

    // Non-spectral config exits 1 with an empty list.
    Json bad = cfg;
    bad["t1"] = "1";
    std::string bad_path = tmp.file("bad.json", bad.dump());
    CHECK(run({"spectrum", "--config", bad_path}, &out) == 1);
    CHECK(Json::parse(out).at("spectra").empty());
}

TEST_CASE("verify command: pass, fail and piped example payloads") {
    TempDir tmp;
    std::string m = tmp.file("m.json", measure_to_json(unit_cross()).dump());
    std::string s = tmp.file(
        "s.json", spectrum_to_json(
                      SpectrumSpec(2, {pt(0, 0), pt(rat(1, 2), rat(-1, 2))}, {pt(1, -1)}))
                      .dump());
    std::string out;
    CHECK(run({"verify", "--measure", m, "--spectrum", s, "--radius", "60", "--ortho-radius",
               "25", "--grid", "3"},
              &out) == 0);
    Json j = Json::parse(out);
    CHECK(j.at("reports")[0].at("verdict") == "pass");
    CHECK(j.at("reports")[0].at("orthogonality").at("violations").empty());

    std::string sym = tmp.file("sym.json",
                               measure_to_json(cross_measure(rat(-1, 2), rat(-1, 2), 1, 1)).dump());
    CHECK(run({"verify", "--measure", sym, "--spectrum", s, "--radius", "40", "--ortho-radius",
               "20", "--grid", "2"},
              &out) == 1);
    j = Json::parse(out);
    CHECK(j.at("reports")[0].at("verdict") == "fail");
    bool has_value = false;
    for (const auto& v : j.at("reports")[0].at("orthogonality").at("violations"))
        if (std::abs(v.at("value").get<double>() - 2.0 / 3.14159265358979) < 1e-2)
            has_value = true;
    CHECK(has_value);

    // CSV dump.
    std::string csv_path = (tmp.path / "out.csv").string();
    CHECK(run({"verify", "--measure", m, "--spectrum", s, "--radius", "30", "--ortho-radius",
               "15", "--grid", "2", "--csv", csv_path},
              &out) == 0);
    std::ifstream csv(csv_path);
    std::string first_line;
    std::getline(csv, first_line);
    CHECK(!first_line.empty());
}

TEST_CASE("zeros command emits member rows") {
    TempDir tmp;
    Json cfg;
    cfg["t1"] = "0";
    cfg["t2"] = "0";
    cfg["T1"] = "1";
    cfg["T2"] = "1";
    std::string cfg_path = tmp.file("cfg.json", cfg.dump());
    std::string pts = tmp.file("pts.csv", "1/2,-1/2\n1,1\n1/3,1/3\n");
    std::string out;
    CHECK(run({"zeros", "--config", cfg_path, "--points", pts}, &out) == 0);
    std::stringstream lines(out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "lambda1,lambda2,member,branch,value");
    std::getline(lines, line);
    CHECK(line.rfind("1/2,-1/2,1,Z2", 0) == 0);
    std::getline(lines, line);
    CHECK(line.rfind("1,1,1,Z1", 0) == 0);
    std::getline(lines, line);
    CHECK(line.rfind("1/3,1/3,0,none", 0) == 0);
}

TEST_CASE("project and scan commands") {
    TempDir tmp;
    std::string m = tmp.file("m.json", measure_to_json(unit_cross()).dump());
    std::string out;
    CHECK(run({"project", "--measure", m, "--line", "1,-1"}, &out) == 0);
    Json j = Json::parse(out);
    CHECK(j.at("exact") == true);
    CHECK(j.at("projection").at("dimension") == 1);
    CHECK(j.at("multiplicity").at("max") == 1);

    CHECK(run({"scan", "--measure", m}, &out) == 0);
    j = Json::parse(out);
    CHECK(j.at("feasibility").at("status") == "feasible");

    // The four-segment construction has no injective direction: exit 1.
    std::string L = tmp.file("L.json",
                             measure_to_json(builtin_examples("th-L").measure).dump());
    CHECK(run({"scan", "--measure", L}, &out) == 1);
    CHECK(Json::parse(out).at("feasibility").at("status") == "no-injective-direction");
}

TEST_CASE("growth, energy and entropy commands") {
    TempDir tmp;
    std::string s = tmp.file(
        "s.json",
        spectrum_to_json(SpectrumSpec(2, {pt(0, 0)}, {pt(rat(1, 2), rat(-1, 2))})).dump());
    std::string out;
    CHECK(run({"growth", "--spectrum", s, "--rmax", "100", "--steps", "8"}, &out) == 0);
    Json j = Json::parse(out);
    CHECK(j.at("superlinear") == false);
    CHECK(j.at("samples").size() == 8);

    std::string m = tmp.file("m.json", measure_to_json(unit_cross()).dump());
    CHECK(run({"energy", "--measure", m, "--rlist", "5,10,20", "--step", "0.1"}, &out) == 0);
    j = Json::parse(out);
    CHECK(j.at("rows").size() == 3);
    CHECK(j.at("lev_estimate").at("alpha").get<double>() > 0.5);

    std::string spec = tmp.file(
        "spec.json",
        spectrum_to_json(SpectrumSpec(2, {pt(0, 0), pt(rat(1, 2), rat(-1, 2))}, {pt(1, -1)}))
            .dump());
    CHECK(run({"entropy", "--measure", m, "--spectrum", spec, "--hs", "2,4,8", "--levels",
               "1..4"},
              &out) == 0);
    j = Json::parse(out);
    CHECK(j.at("bound_check").at("holds") == true);
    CHECK(j.at("entropy_levels").size() == 4);
}

TEST_CASE("example command and piping into verify") {
    std::string out;
    CHECK(run({"example", "--name", "th-L"}, &out) == 0);
    Json j = Json::parse(out);
    CHECK(j.at("measure").at("segments").size() == 4);
    CHECK(j.at("spectra").size() == 1);

    CHECK(run({"example", "--name", "cross(0,0,1,1)"}, &out) == 0);
    j = Json::parse(out);
    CHECK(j.at("spectra").size() == 1);
    CHECK(j.at("measure").at("segments").size() == 2);

    CHECK(run({"example", "--name", "collinear(1,1,2)"}, &out) == 0);
    j = Json::parse(out);
    CHECK(j.at("spectra").size() == 1);

    CHECK(run({"example", "--name", "th-parallel"}, &out) == 0);
    j = Json::parse(out);
    CHECK(j.at("measure").at("segments").size() == 3);

    CHECK(run({"example", "--name", "parallel-pair"}, &out) == 0);
    CHECK(run({"example", "--name", "nope"}, &out) == 3);

    // Builtin example payloads re-parse and verify end to end.
    BuiltinExample ex = builtin_examples("th-L");
    Json payload;
    payload["measure"] = measure_to_json(ex.measure);
    Json arr = Json::array();
    for (const auto& sp : ex.spectra) arr.push_back(spectrum_to_json(sp));
    payload["spectra"] = std::move(arr);
    Measure m2 = measure_from_json(payload.at("measure"));
    SpectrumSpec s2 = spectrum_from_json(payload.at("spectra")[0]);
    auto rep = check_orthogonality(m2, s2, 20.0, 1e-10);
    CHECK(rep.verdict == Verdict::Pass);
}

TEST_CASE("help and usage errors") {
    std::string out, err;
    CHECK(run({"--help"}, &out, &err) == 0);
    CHECK(out.find("classify") != std::string::npos);
    CHECK(run({}, &out, &err) == 3);
    CHECK(run({"verify"}, &out, &err) == 3);
}
