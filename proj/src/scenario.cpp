#include "graded/scenario.hpp"

#include "graded/errors.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace graded {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    if (!j.contains(key)) throw SchemaError(path + "." + key, "missing required field");
    return j.at(key);
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
    return j.get<int>();
}

std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
}

const json& array(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
    return j;
}

std::vector<double> numbers(const json& j, const std::string& path) {
    std::vector<double> out;
    const json& a = array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(number(a[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::string resolve(const std::string& file, const std::string& base_dir) {
    const fs::path p(file);
    return p.is_absolute() ? file : (fs::path(base_dir) / p).string();
}

bool looks_like_file(const std::string& s) { return s.size() > 5 && s.substr(s.size() - 5) == ".json"; }

MultiPolynomial parse_component(const json& j, const std::string& path, int n) {
    std::vector<Monomial> terms;
    const json& a = array(j, path);
    for (std::size_t t = 0; t < a.size(); ++t) {
        const std::string tp = path + "[" + std::to_string(t) + "]";
        Monomial m;
        m.coeff = number(field(a[t], "coeff", tp), tp + ".coeff");
        m.powers.assign(n, 0);
        if (a[t].contains("powers")) {
            const json& pw = array(a[t]["powers"], tp + ".powers");
            if (static_cast<int>(pw.size()) != n) throw SchemaError(tp + ".powers", "needs one exponent per coordinate");
            for (int i = 0; i < n; ++i) {
                m.powers[i] = integer(pw[i], tp + ".powers[" + std::to_string(i) + "]");
                if (m.powers[i] < 0) throw SchemaError(tp + ".powers[" + std::to_string(i) + "]", "negative exponent");
            }
        }
        terms.push_back(std::move(m));
    }
    return MultiPolynomial(n, std::move(terms));
}

}  // namespace

json load_json_file(const std::string& file, const std::string& path) {
    std::ifstream in(file);
    if (!in) throw SchemaError(path, "cannot open file '" + file + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path, std::string("malformed JSON in '") + file + "': " + e.what());
    }
}

AdaptedFrame parse_frame(const json& j, const std::string& path, const std::string& base_dir) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (looks_like_file(s)) {
            const std::string file = resolve(s, base_dir);
            return parse_frame(load_json_file(file, path), path, fs::path(file).parent_path().string());
        }
        try {
            return catalog_get(s).frame;
        } catch (const LookupError& e) {
            throw SchemaError(path, e.what());
        }
    }
    const int n = integer(field(j, "dimension", path), path + ".dimension");
    if (n < 1) throw SchemaError(path + ".dimension", "must be positive");
    std::vector<int> growth;
    const json& g = array(field(j, "growth", path), path + ".growth");
    for (std::size_t i = 0; i < g.size(); ++i) growth.push_back(integer(g[i], path + ".growth[" + std::to_string(i) + "]"));
    const json& fl = array(field(j, "fields", path), path + ".fields");
    if (static_cast<int>(fl.size()) != n) throw SchemaError(path + ".fields", "needs exactly `dimension` fields");
    std::vector<VectorFieldSpec> fields;
    for (int f = 0; f < n; ++f) {
        const std::string fp = path + ".fields[" + std::to_string(f) + "]";
        const std::string label = fl[f].contains("label") ? text(fl[f]["label"], fp + ".label") : "X" + std::to_string(f + 1);
        const json& comps = array(field(fl[f], "components", fp), fp + ".components");
        if (static_cast<int>(comps.size()) != n) throw SchemaError(fp + ".components", "needs one entry per coordinate");
        std::vector<MultiPolynomial> polys;
        for (int c = 0; c < n; ++c) polys.push_back(parse_component(comps[c], fp + ".components[" + std::to_string(c) + "]", n));
        fields.push_back(polynomial_field(label, std::move(polys)));
    }
    MetricFn metric;
    if (j.contains("metric")) {
        const json& mj = array(j["metric"], path + ".metric");
        if (static_cast<int>(mj.size()) != n) throw SchemaError(path + ".metric", "needs n rows");
        Mat g0(n, n);
        for (int r = 0; r < n; ++r) {
            const std::vector<double> row = numbers(mj[r], path + ".metric[" + std::to_string(r) + "]");
            if (static_cast<int>(row.size()) != n) throw SchemaError(path + ".metric[" + std::to_string(r) + "]", "needs n entries");
            for (int c = 0; c < n; ++c) g0(r, c) = row[c];
        }
        metric = [g0](const Vec&) { return g0; };
    }
    const std::string name = j.contains("name") ? text(j["name"], path + ".name") : "custom";
    try {
        return AdaptedFrame(name, std::move(fields), std::move(growth), metric);
    } catch (const InputError& e) {
        throw SchemaError(path, e.what());
    }
}

Curve parse_curve(const json& j, const std::string& path, int dimension, const std::string& base_dir) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (!looks_like_file(s)) throw SchemaError(path, "expected an inline curve, a .json file, or entry/case");
        const std::string file = resolve(s, base_dir);
        return parse_curve(load_json_file(file, path), path, dimension, fs::path(file).parent_path().string());
    }
    const std::string type = text(field(j, "type", path), path + ".type");
    const std::string label = j.contains("label") ? text(j["label"], path + ".label") : "curve";
    if (type == "polynomial") {
        const std::vector<double> dom = numbers(field(j, "domain", path), path + ".domain");
        if (dom.size() != 2 || !(dom[1] > dom[0])) throw SchemaError(path + ".domain", "needs [a, b] with a < b");
        const json& comps = array(field(j, "components", path), path + ".components");
        if (static_cast<int>(comps.size()) != dimension)
            throw SchemaError(path + ".components", "needs one polynomial per frame coordinate");
        std::vector<Polynomial> polys;
        for (int i = 0; i < dimension; ++i)
            polys.emplace_back(numbers(comps[i], path + ".components[" + std::to_string(i) + "]"));
        return polynomial_curve(label, std::move(polys), dom[0], dom[1]);
    }
    if (type == "samples") {
        const std::vector<double> t = numbers(field(j, "t", path), path + ".t");
        const json& pts = array(field(j, "points", path), path + ".points");
        if (pts.size() != t.size() || t.size() < 2) throw SchemaError(path + ".points", "needs one point per t value (at least two)");
        for (std::size_t i = 1; i < t.size(); ++i)
            if (!(t[i] > t[i - 1])) throw SchemaError(path + ".t", "must be strictly increasing");
        std::vector<Vec> points;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::vector<double> row = numbers(pts[i], path + ".points[" + std::to_string(i) + "]");
            if (static_cast<int>(row.size()) != dimension)
                throw SchemaError(path + ".points[" + std::to_string(i) + "]", "dimension mismatch");
            points.push_back(Eigen::Map<const Vec>(row.data(), dimension));
        }
        return sampled_curve(label, t, std::move(points));
    }
    throw SchemaError(path + ".type", "unknown curve type '" + type + "' (polynomial or samples)");
}

Scenario parse_scenario(const json& j, const std::string& base_dir) {
    if (!j.is_object()) throw SchemaError("scenario", "expected an object");
    const json& fj = field(j, "frame", "scenario");
    Scenario sc{AnalysisInput{"scenario", parse_frame(fj, "scenario.frame", base_dir), {}, {}, {}, 0.0, 1.0},
                {}, {}, {}, false, {}, {}};
    std::optional<CatalogEntry> entry;
    if (fj.is_string() && !looks_like_file(fj.get<std::string>())) entry = catalog_get(fj.get<std::string>());
    if (entry) sc.input.surface = entry->surface;

    if (j.contains("curve")) {
        const json& cj = j["curve"];
        if (cj.is_string() && !looks_like_file(cj.get<std::string>())) {
            const std::string ref = cj.get<std::string>();
            const auto slash = ref.find('/');
            try {
                const CatalogEntry owner = slash == std::string::npos ? (entry ? *entry : catalog_get(ref))
                                                                      : catalog_get(ref.substr(0, slash));
                const CatalogCase& c = owner.find_case(slash == std::string::npos ? ref : ref.substr(slash + 1));
                sc.input.curve = c.curve;
                sc.input.degree = c.degree;
                sc.input.a = c.a;
                sc.input.b = c.b;
                if (entry && owner.name == entry->name) {
                    sc.entry = owner;
                    sc.catalog_case = c;
                }
            } catch (const LookupError& e) {
                throw SchemaError("scenario.curve", e.what());
            }
        } else {
            sc.input.curve = parse_curve(cj, "scenario.curve", sc.input.frame.dimension(), base_dir);
            sc.input.a = sc.input.curve->a();
            sc.input.b = sc.input.curve->b();
        }
        sc.input.label = sc.input.curve ? sc.input.curve->label() : "scenario";
    }
    if (j.contains("degree")) {
        const int d = integer(j["degree"], "scenario.degree");
        if (d < 1 || d > sc.input.frame.layers()) throw SchemaError("scenario.degree", "must lie between 1 and the step");
        sc.input.degree = d;
    }
    if (j.contains("interval")) {
        const std::vector<double> iv = numbers(j["interval"], "scenario.interval");
        if (iv.size() != 2 || !(iv[1] > iv[0])) throw SchemaError("scenario.interval", "needs [a, b] with a < b");
        if (sc.input.curve && (iv[0] < sc.input.curve->a() || iv[1] > sc.input.curve->b()))
            throw SchemaError("scenario.interval", "lies outside the curve domain");
        sc.input.a = iv[0];
        sc.input.b = iv[1];
    }
    if (j.contains("grid")) {
        const int g = integer(j["grid"], "scenario.grid");
        if (g < 3 || g % 2 == 0) throw SchemaError("scenario.grid", "node count must be odd and at least 3");
        sc.grid = g;
    }
    const json& an = array(field(j, "analyses", "scenario"), "scenario.analyses");
    for (std::size_t i = 0; i < an.size(); ++i) {
        const std::string p = "scenario.analyses[" + std::to_string(i) + "]";
        const std::string a = text(an[i], p);
        if (std::find(analysis_names().begin(), analysis_names().end(), a) == analysis_names().end())
            throw SchemaError(p, "unknown analysis '" + a + "'");
        sc.analyses.push_back(a);
    }
    if (j.contains("output")) {
        const json& o = j["output"];
        if (o.contains("dir")) sc.out_dir = resolve(text(o["dir"], "scenario.output.dir"), base_dir);
        if (o.contains("csv")) {
            if (!o["csv"].is_boolean()) throw SchemaError("scenario.output.csv", "expected a boolean");
            sc.csv = o["csv"].get<bool>();
        }
    }
    return sc;
}

Scenario load_scenario(const std::string& file) {
    return parse_scenario(load_json_file(file, "scenario"), fs::path(file).parent_path().string());
}

}  // namespace graded
