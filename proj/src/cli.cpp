#include "segspec/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace segspec {

namespace {

constexpr const char* kSchema = "segment-spectra/1";

Json read_json_source(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::stringstream buf;
        buf << in.rdbuf();
        return Json::parse(buf.str());
    }
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open '" + path + "'");
    Json j;
    f >> j;
    return j;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
    return out;
}

std::vector<std::string> split_args(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

// Accepts either a bare object or the wrapped payloads other subcommands emit.
Measure load_measure(const std::string& path, std::istream& in) {
    Json j = read_json_source(path, in);
    if (j.is_object() && j.contains("measure")) j = j.at("measure");
    return measure_from_json(j);
}

SpectrumSpec load_spectrum(const std::string& path, std::istream& in) {
    Json j = read_json_source(path, in);
    if (j.is_object() && j.contains("spectra") && !j.at("spectra").empty())
        return spectrum_from_json(j.at("spectra").at(0));
    if (j.is_object() && j.contains("spectrum")) j = j.at("spectrum");
    return spectrum_from_json(j);
}

void emit(std::ostream& out, Json payload) {
    payload["schema"] = kSchema;
    out << payload.dump(2) << "\n";
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Pass: return 0;
        case Verdict::Fail: return 1;
        case Verdict::Inconclusive: return 2;
    }
    return 3;
}

TwoSegmentInput two_segment_input(const Measure& m) {
    if (!m.atoms().empty() || m.segments().size() != 2)
        throw std::invalid_argument("expected a measure with exactly two segments");
    return TwoSegmentInput(m.segments()[0], m.segments()[1]);
}

// Spectra of a raw two-segment pair in its own coordinates.
std::vector<SpectrumSpec> pair_spectra(const Measure& m, int kmax) {
    TwoSegmentInput input = two_segment_input(m);
    ClassificationResult cls = classify_two_segments(input);
    std::vector<SpectrumSpec> specs;
    if (!cls.spectral) return specs;
    switch (cls.geometry) {
        case Geometry::NonParallel: {
            const auto& c = std::get<CrossConfig>(cls.normalized->form);
            for (const auto& s : cross_line_spectrum(c))
                specs.push_back(pullback_spectrum_affine(s, c.provenance->A));
            break;
        }
        case Geometry::Collinear: {
            const auto& f = std::get<CollinearForm>(cls.normalized->form);
            PeriodicSet1D base = two_interval_spectrum_1d(f.len1, f.len2, f.gap);
            specs.push_back(lift_1d_scaled(base, f.spectrum_step));
            break;
        }
        case Geometry::Parallel: {
            for (int k = 1; k <= kmax; ++k)
                specs.push_back(parallel_spectrum(input.seg1, input.seg2, k));
            specs.push_back(parallel_interval_spectrum(input.seg1, input.seg2));
            break;
        }
    }
    return specs;
}

int run_classify(const std::string& input, std::istream& in, std::ostream& out) {
    Measure m = load_measure(input, in);
    ClassificationResult r = classify_two_segments(two_segment_input(m));
    emit(out, classification_to_json(r));
    return r.spectral ? 0 : 1;
}

int run_spectrum(const std::string& config, const std::string& input, int kmax,
                 std::istream& in, std::ostream& out) {
    Json payload;
    std::vector<SpectrumSpec> specs;
    if (!config.empty()) {
        CrossConfig c = cross_config_from_json(read_json_source(config, in));
        if (classify_cross(c).spectral) specs = cross_line_spectrum(c);
        payload["config"] = cross_config_to_json(c);
    } else {
        Measure m = load_measure(input, in);
        specs = pair_spectra(m, kmax);
    }
    Json arr = Json::array();
    for (const auto& s : specs) arr.push_back(spectrum_to_json(s));
    payload["spectra"] = std::move(arr);
    emit(out, payload);
    return specs.empty() ? 1 : 0;
}

int run_verify(const std::string& measure_path, const std::string& spectrum_path, double radius,
               double ortho_radius, int grid, double tol, const std::string& rlist,
               const std::string& csv, std::istream& in, std::ostream& out) {
    std::optional<Measure> m;
    std::vector<SpectrumSpec> specs;
    if (spectrum_path == "-" && measure_path.empty()) {
        // Piped combined payload: {"measure":..., "spectra":[...]}.
        Json j = read_json_source("-", in);
        m = measure_from_json(j.at("measure"));
        for (const auto& js : j.at("spectra")) specs.push_back(spectrum_from_json(js));
    } else {
        m = load_measure(measure_path, in);
        Json js = read_json_source(spectrum_path, in);
        if (js.is_object() && js.contains("spectra")) {
            for (const auto& one : js.at("spectra")) specs.push_back(spectrum_from_json(one));
        } else if (js.is_object() && js.contains("spectrum")) {
            specs.push_back(spectrum_from_json(js.at("spectrum")));
        } else {
            specs.push_back(spectrum_from_json(js));
        }
    }
    if (specs.empty()) throw std::invalid_argument("no spectra to verify");

    std::vector<double> radii =
        rlist.empty() ? std::vector<double>{radius / 10.0, radius} : parse_double_list(rlist);

    std::ofstream csv_file;
    if (!csv.empty()) {
        csv_file.open(csv);
        if (!csv_file) throw std::invalid_argument("cannot open csv output '" + csv + "'");
        csv_file << std::setprecision(17);
    }

    Json reports = Json::array();
    int exit_code = 0;
    for (const auto& spec : specs) {
        VerificationReport ortho = check_orthogonality(*m, spec, ortho_radius, tol);
        VerificationReport comp = completeness_curve(*m, spec, unit_grid(m->dim(), grid), radii,
                                                     ortho.verdict == Verdict::Pass);
        Json jr;
        jr["orthogonality"] = verification_to_json(ortho);
        jr["completeness"] = verification_to_json(comp);
        Verdict overall = Verdict::Pass;
        if (ortho.verdict == Verdict::Fail || comp.verdict == Verdict::Fail)
            overall = Verdict::Fail;
        else if (ortho.verdict != Verdict::Pass || comp.verdict != Verdict::Pass)
            overall = Verdict::Inconclusive;
        jr["verdict"] = overall == Verdict::Pass
                            ? "pass"
                            : (overall == Verdict::Fail ? "fail" : "inconclusive");
        reports.push_back(std::move(jr));
        exit_code = std::max(exit_code, verdict_exit(overall));

        if (csv_file.is_open()) {
            for (const auto& cs : comp.completeness_samples) {
                for (double c : cs.x) csv_file << c << ",";
                csv_file << cs.radius << "," << cs.sum << "\n";
            }
        }
    }
    Json payload;
    payload["reports"] = std::move(reports);
    emit(out, payload);
    return exit_code;
}

int run_zeros(const std::string& config, const std::string& points, double tol, std::istream& in,
              std::ostream& out) {
    CrossConfig c = cross_config_from_json(read_json_source(config, in));
    std::string content;
    if (points == "-") {
        std::stringstream buf;
        buf << in.rdbuf();
        content = buf.str();
    } else {
        std::ifstream f(points);
        if (!f) throw std::invalid_argument("cannot open '" + points + "'");
        std::stringstream buf;
        buf << f.rdbuf();
        content = buf.str();
    }
    out << std::setprecision(17);
    out << "lambda1,lambda2,member,branch,value\n";
    std::stringstream lines(content);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_args(line);
        if (cells.size() < 2) throw std::invalid_argument("bad points row '" + line + "'");
        ExactScalar l1 = parse_scalar(cells[0]);
        ExactScalar l2 = parse_scalar(cells[1]);
        auto mem = cross_zero_membership(c, Vec(l1, l2), tol);
        const char* branch = mem.branch == ZeroBranch::Z1
                                 ? "Z1"
                                 : (mem.branch == ZeroBranch::Z2 ? "Z2" : "none");
        out << l1.str() << "," << l2.str() << "," << (mem.member ? 1 : 0) << "," << branch << ","
            << mem.value << "\n";
    }
    return 0;
}

int run_project(const std::string& measure_path, const std::string& line, std::istream& in,
                std::ostream& out) {
    Measure m = load_measure(measure_path, in);
    auto parts = split_args(line);
    if (parts.size() != 2) throw std::invalid_argument("line must be 'dx,dy'");
    LineDir dir(Vec(parse_scalar(parts[0]), parse_scalar(parts[1])));
    ProjectionResult proj = project_to_line(m, dir);
    Json payload;
    payload["projection"] = measure_to_json(proj.line_measure);
    payload["exact"] = proj.exact;
    Json shadows = Json::array();
    for (const auto& sh : proj.shadows) {
        Json js;
        js["source"] = sh.from_atom ? "atom" : "segment";
        js["index"] = sh.source_index;
        js["collapsed"] = sh.collapsed;
        js["lo"] = scalar_to_json(sh.lo);
        js["hi"] = scalar_to_json(sh.hi);
        shadows.push_back(std::move(js));
    }
    payload["shadows"] = std::move(shadows);
    Json mult;
    Json breaks = Json::array();
    for (const auto& b : proj.multiplicity.breakpoints) breaks.push_back(scalar_to_json(b));
    mult["breakpoints"] = std::move(breaks);
    mult["counts"] = proj.multiplicity.counts;
    mult["max"] = proj.multiplicity.max_multiplicity();
    payload["multiplicity"] = std::move(mult);
    emit(out, payload);
    return 0;
}

int run_scan(const std::string& measure_path, int max_gap, std::istream& in, std::ostream& out) {
    Measure m = load_measure(measure_path, in);
    AngleIntervalSet scan = injectivity_scan(m);
    FeasibilityReport feas = line_spectrum_feasibility(m, max_gap);
    Json payload;
    payload["injectivity"] = angle_set_to_json(scan);
    payload["feasibility"] = feasibility_to_json(feas);
    emit(out, payload);
    if (feas.status == FeasibilityStatus::Feasible) return 0;
    if (feas.status == FeasibilityStatus::Unsupported) return 2;
    return 1;
}

int run_growth(const std::string& spectrum_path, double rmax, int steps, const std::string& csv,
               std::istream& in, std::ostream& out) {
    SpectrumSpec s = load_spectrum(spectrum_path, in);
    GrowthProfile prof = growth_profile(s, rmax, {}, steps);
    if (!csv.empty()) {
        std::ofstream f(csv);
        if (!f) throw std::invalid_argument("cannot open csv output '" + csv + "'");
        f << std::setprecision(17) << "R,count\n";
        for (const auto& sample : prof.samples) f << sample.radius << "," << sample.count << "\n";
    }
    emit(out, growth_profile_to_json(prof));
    return 0;
}

int run_energy(const std::string& measure_path, double rmax, double step,
               const std::string& rlist, const std::string& csv, std::istream& in,
               std::ostream& out) {
    Measure m = load_measure(measure_path, in);
    std::vector<double> radii = rlist.empty()
                                    ? std::vector<double>{rmax / 8, rmax / 4, rmax / 2, rmax}
                                    : parse_double_list(rlist);
    std::sort(radii.begin(), radii.end());
    Json rows = Json::array();
    std::vector<double> energies;
    for (double R : radii) {
        double e = fourier_energy(m, R, step);
        energies.push_back(e);
        Json jr;
        jr["R"] = R;
        jr["energy"] = e;
        rows.push_back(std::move(jr));
    }
    Json payload;
    payload["rows"] = std::move(rows);
    if (radii.size() >= 3) {
        LevEstimate lev = lev_exponent_estimate(m, radii, step);
        Json jl;
        jl["alpha"] = lev.alpha;
        jl["slope"] = lev.slope;
        jl["saturated"] = lev.saturated;
        payload["lev_estimate"] = std::move(jl);
    }
    if (!csv.empty()) {
        std::ofstream f(csv);
        if (!f) throw std::invalid_argument("cannot open csv output '" + csv + "'");
        f << std::setprecision(17) << "R,energy\n";
        for (size_t i = 0; i < radii.size(); ++i) f << radii[i] << "," << energies[i] << "\n";
    }
    emit(out, payload);
    return 0;
}

int run_entropy(const std::string& measure_path, const std::string& spectrum_path,
                const std::string& levels, const std::string& hs, double epsilon, unsigned seed,
                const std::string& csv, std::istream& in, std::ostream& out) {
    Measure m = load_measure(measure_path, in);
    Json payload;

    // Per-level entropies, e.g. --levels 1..8
    if (!levels.empty()) {
        int lo = 1, hi = 8;
        auto dots = levels.find("..");
        if (dots == std::string::npos) {
            lo = hi = std::stoi(levels);
        } else {
            lo = std::stoi(levels.substr(0, dots));
            hi = std::stoi(levels.substr(dots + 2));
        }
        Json rows = Json::array();
        for (int n = lo; n <= hi; ++n) {
            Json jr;
            jr["level"] = n;
            jr["entropy"] = dyadic_entropy(dyadic_masses(m, n));
            rows.push_back(std::move(jr));
        }
        payload["entropy_levels"] = std::move(rows);
    }

    bool holds = true;
    if (!spectrum_path.empty()) {
        SpectrumSpec s = load_spectrum(spectrum_path, in);
        auto rep = entropy_bound_check(m, s, parse_double_list(hs), epsilon, seed);
        payload["bound_check"] = entropy_report_to_json(rep);
        holds = rep.holds;
        if (!csv.empty()) {
            std::ofstream f(csv);
            if (!f) throw std::invalid_argument("cannot open csv output '" + csv + "'");
            f << std::setprecision(17) << "h,count,bound\n";
            for (const auto& row : rep.rows)
                f << row.h << "," << row.max_count << "," << row.bound << "\n";
        }
    }
    emit(out, payload);
    return holds ? 0 : 1;
}

int run_example(const std::string& name, const std::string& emit_what, std::ostream& out) {
    BuiltinExample ex = builtin_examples(name);
    Json payload;
    payload["name"] = name;
    if (emit_what == "both" || emit_what == "measure")
        payload["measure"] = measure_to_json(ex.measure);
    if (emit_what == "both" || emit_what == "spectra") {
        Json arr = Json::array();
        for (const auto& s : ex.spectra) arr.push_back(spectrum_to_json(s));
        payload["spectra"] = std::move(arr);
    }
    emit(out, payload);
    return 0;
}

}  // namespace

BuiltinExample builtin_examples(const std::string& name) {
    if (name == "th-parallel") {
        // Three length-100 horizontal segments with vertical offsets 0, 1, 2;
        // the top one is shifted by sqrt2/200, an irrational in (0, 1/100).
        ExactScalar alpha(Rational(0), Rational(1, 200));
        Rational third(1, 3);
        std::vector<SegmentPiece> segs;
        segs.push_back({Vec(0, 0), Vec(100, 0), ExactScalar(third)});
        segs.push_back({Vec(0, 1), Vec(100, 1), ExactScalar(third)});
        segs.push_back({Vec(alpha, 2), Vec(alpha + ExactScalar(100), 2), ExactScalar(third)});
        Measure m = Measure::segments_only(2, std::move(segs));

        SpectrumSpec masks = equal_spaced_atoms_spectrum(3, 1, LineDir(Vec(0, 1)));
        PeriodicSet1D hundredth({ExactScalar(0)}, ExactScalar(Rational(1, 100)));
        SpectrumSpec interval = lift_1d_spectrum(hundredth, LineDir(Vec(1, 0)));
        SplitBasis split({Vec(0, 1), Vec(1, 0)}, 1);
        Measure nu = Measure::segments_only(2, {SegmentPiece{Vec(0, 0), Vec(100, 0), 1}});
        return {std::move(m), {sumset_spectrum(masks, interval, split, &nu)}};
    }
    if (name == "th-L") {
        Rational quarter(1, 4);
        std::vector<SegmentPiece> segs;
        segs.push_back({Vec(0, 0), Vec(1, 0), ExactScalar(quarter)});
        segs.push_back({Vec(0, 0), Vec(0, 1), ExactScalar(quarter)});
        segs.push_back({Vec(1, 1), Vec(1, 2), ExactScalar(quarter)});
        segs.push_back({Vec(1, 1), Vec(2, 1), ExactScalar(quarter)});
        Measure m = Measure::segments_only(2, std::move(segs));

        SpectrumSpec cross = cross_line_spectrum(CrossConfig(0, 0, 1, 1)).front();
        SpectrumSpec atoms = equal_spaced_atoms_spectrum(2, ExactScalar::sqrt2(), LineDir(Vec(1, 1)));
        ExactScalar c(Rational(0), Rational(1, 2));  // sqrt2/2
        SplitBasis split({Vec(c, -c), Vec(c, c)}, 1);
        Measure nu = Measure::atoms_only(
            2, {AtomPiece{Vec(0, 0), ExactScalar(Rational(1, 2))},
                AtomPiece{Vec(1, 1), ExactScalar(Rational(1, 2))}});
        return {std::move(m), {sumset_spectrum(cross, atoms, split, &nu)}};
    }
    if (name == "parallel-pair") {
        ExactScalar half(Rational(1, 2));
        SegmentPiece s1{Vec(-half, 0), Vec(half, 0), ExactScalar(Rational(1, 2))};
        SegmentPiece s2{Vec(-half, 1), Vec(half, 1), ExactScalar(Rational(1, 2))};
        Measure m = Measure::segments_only(2, {s1, s2});
        std::vector<SpectrumSpec> specs;
        for (int k = 1; k <= 3; ++k) specs.push_back(parallel_spectrum(s1, s2, k));
        specs.push_back(parallel_interval_spectrum(s1, s2));
        return {std::move(m), std::move(specs)};
    }
    auto call_args = [&](const std::string& prefix) -> std::optional<std::vector<ExactScalar>> {
        if (name.rfind(prefix + "(", 0) != 0 || name.back() != ')') return std::nullopt;
        std::string inner = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
        std::vector<ExactScalar> vals;
        for (const auto& tok : split_args(inner)) vals.push_back(parse_scalar(tok));
        return vals;
    };
    if (auto args = call_args("cross")) {
        if (args->size() != 4)
            throw std::invalid_argument("cross(t1,t2,T1,T2) needs four scalars");
        CrossConfig c((*args)[0], (*args)[1], (*args)[2], (*args)[3]);
        std::vector<SpectrumSpec> specs;
        if (classify_cross(c).spectral) specs = cross_line_spectrum(c);
        return {c.measure(), std::move(specs)};
    }
    if (auto args = call_args("collinear")) {
        if (args->size() != 3)
            throw std::invalid_argument("collinear(len1,len2,gap) needs three scalars");
        const ExactScalar& l1 = (*args)[0];
        const ExactScalar& l2 = (*args)[1];
        const ExactScalar& g = (*args)[2];
        if (l1.sign() <= 0 || l2.sign() <= 0 || g.sign() < 0)
            throw std::invalid_argument("collinear: lengths positive, gap nonnegative");
        std::vector<SegmentPiece> segs;
        segs.push_back({Vec(std::vector<ExactScalar>{ExactScalar(0)}),
                        Vec(std::vector<ExactScalar>{l1}), l1});
        segs.push_back({Vec(std::vector<ExactScalar>{l1 + g}),
                        Vec(std::vector<ExactScalar>{l1 + g + l2}), l2});
        Measure m = Measure(1, {}, std::move(segs));
        std::vector<SpectrumSpec> specs;
        ClassificationResult cls = classify_collinear(l1, l2, g);
        if (cls.spectral) {
            const auto& f = std::get<CollinearForm>(cls.normalized->form);
            PeriodicSet1D base = two_interval_spectrum_1d(f.len1, f.len2, f.gap);
            ExactScalar sigma = ExactScalar(2) / (l1 + l2);
            specs.push_back(lift_1d_scaled(base, Vec(std::vector<ExactScalar>{sigma})));
        }
        return {std::move(m), std::move(specs)};
    }
    throw std::invalid_argument("unknown example '" + name + "'");
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"segment-spectra: spectrality of arc-length measures on segment unions"};
    app.require_subcommand(1);

    std::string input, config, measure_path, spectrum_path, points, line, csv, rlist, hs, levels,
        name, emit_what = "both";
    double radius = 500.0, ortho_radius = 50.0, tol = 1e-10, step = 0.05, rmax = 1000.0,
           epsilon = 0.5;
    int grid = 8, kmax = 3, max_gap = 16, steps = 16;
    unsigned seed = 0;

    auto* c_classify = app.add_subcommand("classify", "decide spectrality of two segments");
    c_classify->add_option("--input", input, "two-segment measure JSON ('-' for stdin)")
        ->required();

    auto* c_spectrum = app.add_subcommand("spectrum", "construct spectra");
    c_spectrum->add_option("--config", config, "cross config JSON");
    c_spectrum->add_option("--input", input, "two-segment measure JSON");
    c_spectrum->add_option("--kmax", kmax, "parallel projection choices to emit");

    auto* c_verify = app.add_subcommand("verify", "orthogonality and completeness report");
    c_verify->add_option("--measure", measure_path, "measure JSON");
    c_verify->add_option("--spectrum", spectrum_path, "spectrum JSON ('-' accepts piped payloads)")
        ->required();
    c_verify->add_option("--radius", radius, "completeness truncation radius");
    c_verify->add_option("--ortho-radius", ortho_radius, "orthogonality enumeration radius");
    c_verify->add_option("--grid", grid, "grid points per axis on [0,1]^d");
    c_verify->add_option("--tol", tol, "orthogonality tolerance");
    c_verify->add_option("--rlist", rlist, "comma list of completeness radii");
    c_verify->add_option("--csv", csv, "dump (x,R,S) rows to a CSV file");

    auto* c_zeros = app.add_subcommand("zeros", "cross zero-set membership for points");
    c_zeros->add_option("--config", config, "cross config JSON")->required();
    c_zeros->add_option("--points", points, "CSV of lambda1,lambda2 rows ('-' for stdin)")
        ->required();
    c_zeros->add_option("--tol", tol, "numeric membership tolerance");

    auto* c_project = app.add_subcommand("project", "project a planar measure onto a line");
    c_project->add_option("--measure", measure_path, "measure JSON")->required();
    c_project->add_option("--line", line, "direction 'dx,dy' (exact scalars)")->required();

    auto* c_scan = app.add_subcommand("scan", "injectivity scan and line-spectrum feasibility");
    c_scan->add_option("--measure", measure_path, "measure JSON")->required();
    c_scan->add_option("--max-gap", max_gap, "integer gap search bound");

    auto* c_growth = app.add_subcommand("growth", "ball counts of a spectrum");
    c_growth->add_option("--spectrum", spectrum_path, "spectrum JSON")->required();
    c_growth->add_option("--rmax", rmax, "largest radius");
    c_growth->add_option("--steps", steps, "radii on the log grid");
    c_growth->add_option("--csv", csv, "dump (R,count) rows");

    auto* c_energy = app.add_subcommand("energy", "Fourier energy integral");
    c_energy->add_option("--measure", measure_path, "measure JSON")->required();
    c_energy->add_option("--rmax", rmax, "largest radius");
    c_energy->add_option("--step", step, "quadrature step");
    c_energy->add_option("--rlist", rlist, "comma list of radii");
    c_energy->add_option("--csv", csv, "dump (R,energy) rows");

    auto* c_entropy = app.add_subcommand("entropy", "dyadic entropy and the count bound");
    c_entropy->add_option("--measure", measure_path, "measure JSON")->required();
    c_entropy->add_option("--spectrum", spectrum_path, "spectrum JSON");
    c_entropy->add_option("--levels", levels, "dyadic levels, e.g. 1..8");
    c_entropy->add_option("--hs", hs, "ball radii for the count bound")
        ->default_val("2,4,8,16,32,64");
    c_entropy->add_option("--epsilon", epsilon, "cell transform threshold");
    c_entropy->add_option("--seed", seed, "sampling seed");
    c_entropy->add_option("--csv", csv, "dump (h,count,bound) rows");

    auto* c_example = app.add_subcommand("example", "built-in constructions");
    c_example->add_option("--name", name, "th-parallel | th-L | parallel-pair | cross(...) | collinear(...)")
        ->required();
    c_example->add_option("--emit", emit_what, "both | measure | spectra");

    std::vector<const char*> argv;
    argv.push_back("segspec");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 3;
    }

    try {
        if (c_classify->parsed()) return run_classify(input, std::cin, out);
        if (c_spectrum->parsed()) {
            if (config.empty() && input.empty())
                throw std::invalid_argument("spectrum needs --config or --input");
            return run_spectrum(config, input, kmax, std::cin, out);
        }
        if (c_verify->parsed())
            return run_verify(measure_path, spectrum_path, radius, ortho_radius, grid, tol, rlist,
                              csv, std::cin, out);
        if (c_zeros->parsed()) return run_zeros(config, points, tol, std::cin, out);
        if (c_project->parsed()) return run_project(measure_path, line, std::cin, out);
        if (c_scan->parsed()) return run_scan(measure_path, max_gap, std::cin, out);
        if (c_growth->parsed()) return run_growth(spectrum_path, rmax, steps, csv, std::cin, out);
        if (c_energy->parsed())
            return run_energy(measure_path, rmax, step, rlist, csv, std::cin, out);
        if (c_entropy->parsed())
            return run_entropy(measure_path, spectrum_path, levels, hs, epsilon, seed, csv,
                               std::cin, out);
        if (c_example->parsed()) return run_example(name, emit_what, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "usage error: no subcommand\n";
    return 3;
}

}  // namespace segspec
