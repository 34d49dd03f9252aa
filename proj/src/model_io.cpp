#include "qdfs/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "qdfs/version.hpp"

namespace qdfs {

using jsonu::json;

namespace {

constexpr std::size_t max_dim = 4096; // sanity cap before any allocation

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw Error("failed writing '" + path + "'");
}

ToleranceOverrides parse_overrides(const json& j, const std::string& path) {
    ToleranceOverrides o;
    if (!j.is_object()) jsonu::fail(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        const double v = jsonu::number(value, path + "." + key);
        if (!(v > 0)) jsonu::fail(path + "." + key, "tolerances must be positive");
        if (key == "cluster_rel") o.cluster_rel = v;
        else if (key == "rank_rel") o.rank_rel = v;
        else if (key == "rate_rel") o.rate_rel = v;
        else if (key == "residual_rel") o.residual_rel = v;
        else if (key == "ld_norm_per_dim") o.ld_norm_per_dim = v;
        else if (key == "herm_rel") o.herm_rel = v;
        else jsonu::fail(path + "." + key, "unknown tolerance field");
    }
    return o;
}

json overrides_json(const ToleranceOverrides& o) {
    json j = json::object();
    if (o.cluster_rel) j["cluster_rel"] = *o.cluster_rel;
    if (o.rank_rel) j["rank_rel"] = *o.rank_rel;
    if (o.rate_rel) j["rate_rel"] = *o.rate_rel;
    if (o.residual_rel) j["residual_rel"] = *o.residual_rel;
    if (o.ld_norm_per_dim) j["ld_norm_per_dim"] = *o.ld_norm_per_dim;
    if (o.herm_rel) j["herm_rel"] = *o.herm_rel;
    return j;
}

} // namespace

MasterEquationModel parse_model(const std::string& text) {
    const json root = jsonu::parse_text(text);
    const std::string p = "model";
    jsonu::check_format(root, model_format_name, model_format_major, p);

    MasterEquationModel m;
    if (const json* l = jsonu::optional_field(root, "label", p))
        m.label = jsonu::text(*l, p + ".label");
    m.dim = jsonu::index(jsonu::field(root, "dim", p), p + ".dim");
    if (m.dim < 1 || m.dim > max_dim)
        jsonu::fail(p + ".dim", "must lie in [1, " + std::to_string(max_dim) + "]");
    m.h_eff = jsonu::matrix_value(jsonu::field(root, "h_eff", p), m.dim, m.dim, p + ".h_eff");

    // Tagged union: {"diagonal": [{lambda, J}, ...]} or {"gks": {basis, A}}.
    const json& dis = jsonu::field(root, "dissipator", p);
    const std::string dp = p + ".dissipator";
    if (!dis.is_object()) jsonu::fail(dp, "expected an object");
    const json* diag = jsonu::optional_field(dis, "diagonal", dp);
    const json* gks = jsonu::optional_field(dis, "gks", dp);
    if ((diag != nullptr) == (gks != nullptr))
        jsonu::fail(dp, "expected exactly one of \"diagonal\" or \"gks\"");
    if (diag) {
        if (!diag->is_array()) jsonu::fail(dp + ".diagonal", "expected an array of terms");
        DiagonalLindblad d;
        for (std::size_t i = 0; i < diag->size(); ++i) {
            const std::string tp = dp + ".diagonal[" + std::to_string(i) + "]";
            LindbladTerm t;
            t.rate = jsonu::number(jsonu::field((*diag)[i], "lambda", tp), tp + ".lambda");
            t.jump = jsonu::matrix_value(jsonu::field((*diag)[i], "J", tp), m.dim, m.dim,
                                         tp + ".J");
            d.terms.push_back(std::move(t));
        }
        m.dissipator = std::move(d);
    } else {
        const std::string gp = dp + ".gks";
        const json& basis = jsonu::field(*gks, "basis", gp);
        if (!basis.is_array()) jsonu::fail(gp + ".basis", "expected an array");
        GksDissipator g;
        for (std::size_t i = 0; i < basis.size(); ++i)
            g.basis.push_back(jsonu::matrix_value(basis[i], m.dim, m.dim,
                                                  gp + ".basis[" + std::to_string(i) + "]"));
        g.coeff = jsonu::matrix_value(jsonu::field(*gks, "A", gp), g.basis.size(),
                                      g.basis.size(), gp + ".A");
        m.dissipator = std::move(g);
    }

    if (const json* t = jsonu::optional_field(root, "tolerances", p))
        m.tol_overrides = parse_overrides(*t, p + ".tolerances");
    if (const json* t = jsonu::optional_field(root, "truncated_demo", p))
        m.truncated_demo = jsonu::boolean(*t, p + ".truncated_demo");
    return m;
}

std::string serialize_model(const MasterEquationModel& m) {
    json root;
    root["format"] = std::string(model_format_name) + "/" + std::to_string(model_format_major);
    root["label"] = m.label;
    root["dim"] = m.dim;
    root["h_eff"] = jsonu::matrix_json(m.h_eff);

    json dis;
    if (m.is_diagonal()) {
        json terms = json::array();
        for (const auto& t : m.diagonal().terms)
            terms.push_back({{"lambda", t.rate}, {"J", jsonu::matrix_json(t.jump)}});
        dis["diagonal"] = std::move(terms);
    } else {
        json basis = json::array();
        for (const auto& f : m.gks().basis) basis.push_back(jsonu::matrix_json(f));
        dis["gks"] = {{"basis", std::move(basis)}, {"A", jsonu::matrix_json(m.gks().coeff)}};
    }
    root["dissipator"] = std::move(dis);

    if (m.tol_overrides.any()) root["tolerances"] = overrides_json(m.tol_overrides);
    if (m.truncated_demo) root["truncated_demo"] = true;
    return root.dump(2) + "\n";
}

MasterEquationModel load_model(const std::string& path) {
    try {
        return parse_model(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_model(const MasterEquationModel& m, const std::string& path) {
    write_file(path, serialize_model(m));
}

ComplexMatrix load_state(const std::string& path, std::size_t expected_dim) {
    const json root = jsonu::parse_text(read_file(path));
    const std::string p = "state";
    try {
        jsonu::check_format(root, state_format_name, state_format_major, p);
        const std::size_t dim = jsonu::index(jsonu::field(root, "dim", p), p + ".dim");
        if (dim != expected_dim)
            jsonu::fail(p + ".dim", "state dimension " + std::to_string(dim) +
                                        " does not match the model dimension " +
                                        std::to_string(expected_dim));
        const std::string kind = jsonu::text(jsonu::field(root, "kind", p), p + ".kind");
        const json& data = jsonu::field(root, "data", p);
        if (kind == "psi") return jsonu::matrix_value(data, dim, 1, p + ".data");
        if (kind == "rho") return jsonu::matrix_value(data, dim, dim, p + ".data");
        jsonu::fail(p + ".kind", "expected \"psi\" or \"rho\", got \"" + kind + "\"");
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace qdfs
