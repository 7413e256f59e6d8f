#include "segspec/json_io.hpp"

namespace segspec {

namespace {

std::string rational_token(const Rational& r) { return rational_str(r); }

Rational rational_from_token(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("json: expected a rational token");
}

}  // namespace

Json scalar_to_json(const ExactScalar& x) {
    if (x.is_rational()) return rational_token(x.rat());
    Json j;
    j["rat"] = rational_token(x.rat());
    j["sqrt2"] = rational_token(x.sq2());
    return j;
}

ExactScalar scalar_from_json(const Json& j) {
    if (j.is_object()) {
        Rational rat(0), sq2(0);
        if (j.contains("rat")) rat = rational_from_token(j.at("rat"));
        if (j.contains("sqrt2")) sq2 = rational_from_token(j.at("sqrt2"));
        return ExactScalar(rat, sq2);
    }
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s.find("sqrt2") != std::string::npos) return parse_scalar(s);
        return ExactScalar(parse_rational(s));
    }
    if (j.is_number_integer()) return ExactScalar(Rational(j.get<long long>()));
    throw std::invalid_argument("json: expected a scalar");
}

Json vec_to_json(const Vec& v) {
    Json j = Json::array();
    for (int i = 0; i < v.dim(); ++i) j.push_back(scalar_to_json(v[i]));
    return j;
}

Vec vec_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("json: expected a point array");
    std::vector<ExactScalar> coords;
    for (const auto& c : j) coords.push_back(scalar_from_json(c));
    return Vec(std::move(coords));
}

Json measure_to_json(const Measure& m) {
    Json j;
    j["dimension"] = m.dim();
    Json atoms = Json::array();
    for (const auto& a : m.atoms()) {
        Json ja;
        ja["at"] = vec_to_json(a.at);
        ja["mass"] = scalar_to_json(a.mass);
        atoms.push_back(std::move(ja));
    }
    j["atoms"] = std::move(atoms);
    Json segments = Json::array();
    for (const auto& s : m.segments()) {
        Json js;
        js["from"] = vec_to_json(s.from);
        js["to"] = vec_to_json(s.to);
        js["mass"] = scalar_to_json(s.mass);
        segments.push_back(std::move(js));
    }
    j["segments"] = std::move(segments);
    return j;
}

Measure measure_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dimension"))
        throw std::invalid_argument("json: measure needs a dimension");
    int dim = j.at("dimension").get<int>();
    std::vector<AtomPiece> atoms;
    if (j.contains("atoms"))
        for (const auto& ja : j.at("atoms"))
            atoms.push_back({vec_from_json(ja.at("at")), scalar_from_json(ja.at("mass"))});
    std::vector<SegmentPiece> segments;
    if (j.contains("segments"))
        for (const auto& js : j.at("segments"))
            segments.push_back({vec_from_json(js.at("from")), vec_from_json(js.at("to")),
                                scalar_from_json(js.at("mass"))});
    return Measure(dim, std::move(atoms), std::move(segments));
}

Json spectrum_to_json(const SpectrumSpec& s) {
    Json j;
    j["dimension"] = s.dim();
    Json offsets = Json::array();
    for (const auto& o : s.offsets()) offsets.push_back(vec_to_json(o));
    j["offsets"] = std::move(offsets);
    Json lattice = Json::array();
    for (const auto& g : s.lattice()) lattice.push_back(vec_to_json(g));
    j["lattice"] = std::move(lattice);
    return j;
}

SpectrumSpec spectrum_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dimension"))
        throw std::invalid_argument("json: spectrum needs a dimension");
    int dim = j.at("dimension").get<int>();
    std::vector<Vec> offsets, lattice;
    if (j.contains("offsets"))
        for (const auto& o : j.at("offsets")) offsets.push_back(vec_from_json(o));
    if (j.contains("lattice"))
        for (const auto& g : j.at("lattice")) lattice.push_back(vec_from_json(g));
    return SpectrumSpec(dim, std::move(offsets), std::move(lattice));
}

Json cross_config_to_json(const CrossConfig& c) {
    Json j;
    j["t1"] = scalar_to_json(c.t1);
    j["t2"] = scalar_to_json(c.t2);
    j["T1"] = scalar_to_json(c.T1);
    j["T2"] = scalar_to_json(c.T2);
    if (c.provenance) {
        Json m;
        m["A"] = Json::array({scalar_to_json(c.provenance->A.a()),
                              scalar_to_json(c.provenance->A.b()),
                              scalar_to_json(c.provenance->A.c()),
                              scalar_to_json(c.provenance->A.d())});
        m["b"] = vec_to_json(c.provenance->b);
        j["map"] = std::move(m);
    }
    return j;
}

CrossConfig cross_config_from_json(const Json& j) {
    std::optional<AffineMap> prov;
    if (j.contains("map")) {
        const Json& m = j.at("map");
        const Json& a = m.at("A");
        prov = AffineMap{Mat2(scalar_from_json(a.at(0)), scalar_from_json(a.at(1)),
                              scalar_from_json(a.at(2)), scalar_from_json(a.at(3))),
                         vec_from_json(m.at("b"))};
    }
    return CrossConfig(scalar_from_json(j.at("t1")), scalar_from_json(j.at("t2")),
                       scalar_from_json(j.at("T1")), scalar_from_json(j.at("T2")),
                       std::move(prov));
}

namespace {

const char* geometry_name(Geometry g) {
    switch (g) {
        case Geometry::Collinear: return "collinear";
        case Geometry::Parallel: return "parallel";
        case Geometry::NonParallel: return "nonparallel";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

}  // namespace

Json classification_to_json(const ClassificationResult& r) {
    Json j;
    j["geometry"] = geometry_name(r.geometry);
    j["spectral"] = r.spectral;
    j["matched_conditions"] = r.matched_conditions;
    j["exactness"] = r.exact ? "exact" : "numeric-flagged";
    if (r.normalized) {
        if (std::holds_alternative<CrossConfig>(r.normalized->form)) {
            j["normalized"] = cross_config_to_json(std::get<CrossConfig>(r.normalized->form));
        } else if (std::holds_alternative<CollinearForm>(r.normalized->form)) {
            const auto& f = std::get<CollinearForm>(r.normalized->form);
            Json n;
            n["len1"] = scalar_to_json(f.len1);
            n["len2"] = scalar_to_json(f.len2);
            n["gap"] = scalar_to_json(f.gap);
            n["spectrum_step"] = vec_to_json(f.spectrum_step);
            j["normalized"] = std::move(n);
        } else {
            const auto& f = std::get<ParallelForm>(r.normalized->form);
            Json n;
            n["T1"] = scalar_to_json(f.T1);
            n["T2"] = scalar_to_json(f.T2);
            n["perp_dist_sq"] = scalar_to_json(f.perp_dist_sq);
            j["normalized"] = std::move(n);
        }
    }
    return j;
}

Json verification_to_json(const VerificationReport& r) {
    Json j;
    j["verdict"] = verdict_name(r.verdict);
    j["tol"] = r.tol;
    j["radius"] = r.radius;
    j["normalization_factor"] = scalar_to_json(r.normalization_factor);
    j["points_enumerated"] = r.points_enumerated;
    j["differences_checked"] = r.differences_checked;
    j["bessel_max"] = r.bessel_max;
    if (!r.note.empty()) j["note"] = r.note;
    Json viol = Json::array();
    for (const auto& v : r.violations) {
        Json jv;
        jv["lambda"] = vec_to_json(v.lambda);
        jv["lambda_prime"] = vec_to_json(v.lambda_prime);
        jv["value"] = v.value;
        viol.push_back(std::move(jv));
    }
    j["violations"] = std::move(viol);
    Json samples = Json::array();
    for (const auto& cs : r.completeness_samples) {
        Json jc;
        jc["x"] = cs.x;
        jc["R"] = cs.radius;
        jc["S"] = cs.sum;
        samples.push_back(std::move(jc));
    }
    j["completeness_samples"] = std::move(samples);
    return j;
}

Json angle_set_to_json(const AngleIntervalSet& a) {
    Json j;
    Json crit = Json::array();
    for (const auto& c : a.critical) {
        Json jc;
        jc["theta"] = c.theta;
        jc["direction"] = vec_to_json(c.direction);
        jc["injective"] = c.injective;
        crit.push_back(std::move(jc));
    }
    j["critical"] = std::move(crit);
    Json arcs = Json::array();
    for (const auto& arc : a.arcs) {
        Json ja;
        ja["begin"] = arc.begin;
        ja["end"] = arc.end;
        ja["sample_direction"] = vec_to_json(arc.sample_direction);
        arcs.push_back(std::move(ja));
    }
    j["arcs"] = std::move(arcs);
    j["empty"] = a.empty();
    return j;
}

Json feasibility_to_json(const FeasibilityReport& r) {
    Json j;
    switch (r.status) {
        case FeasibilityStatus::Feasible: j["status"] = "feasible"; break;
        case FeasibilityStatus::NoInjectiveDirection: j["status"] = "no-injective-direction"; break;
        case FeasibilityStatus::IncommensurableGaps: j["status"] = "incommensurable-gaps"; break;
        case FeasibilityStatus::NoneFound: j["status"] = "none-found"; break;
        case FeasibilityStatus::Unsupported: j["status"] = "unsupported"; break;
    }
    if (!r.obstruction.empty()) j["obstruction"] = r.obstruction;
    if (r.certificate) j["certificate"] = scalar_to_json(*r.certificate);
    Json dirs = Json::array();
    for (const auto& d : r.directions) {
        Json jd;
        jd["direction"] = vec_to_json(d.direction);
        Json ratios = Json::array();
        for (const auto& g : d.gap_ratios) ratios.push_back(scalar_to_json(g));
        jd["gap_ratios"] = std::move(ratios);
        dirs.push_back(std::move(jd));
    }
    j["directions"] = std::move(dirs);
    return j;
}

Json growth_profile_to_json(const GrowthProfile& g) {
    Json j;
    j["slope"] = g.slope;
    j["intercept"] = g.intercept;
    j["max_ratio"] = g.max_ratio;
    j["superlinear"] = g.superlinear;
    Json samples = Json::array();
    for (const auto& s : g.samples) {
        Json js;
        js["center"] = s.center;
        js["R"] = s.radius;
        js["count"] = s.count;
        samples.push_back(std::move(js));
    }
    j["samples"] = std::move(samples);
    return j;
}

Json entropy_report_to_json(const EntropyBoundReport& r) {
    Json j;
    j["epsilon"] = r.epsilon;
    j["delta_estimate"] = r.delta;
    j["delta_is_estimate"] = true;
    j["varrho"] = r.varrho;
    j["fitted_c"] = r.fitted_c;
    j["holds"] = r.holds;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json jr;
        jr["h"] = row.h;
        jr["level"] = row.level;
        jr["max_count"] = row.max_count;
        jr["entropy"] = row.entropy;
        jr["bound"] = row.bound;
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    return j;
}

}  // namespace segspec
