#include "qdfs/report_io.hpp"

#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "qdfs/version.hpp"

namespace qdfs {

using jsonu::json;

namespace {

json tuple_json(const EigTuple& t) {
    json arr = json::array();
    for (Complex c : t) arr.push_back(jsonu::complex_json(c));
    return arr;
}

EigTuple tuple_value(const json& j, const std::string& path) {
    if (!j.is_array()) jsonu::fail(path, "expected an array of [re, im] pairs");
    EigTuple t;
    for (std::size_t i = 0; i < j.size(); ++i)
        t.push_back(jsonu::complex_value(j[i], path + "[" + std::to_string(i) + "]"));
    return t;
}

json subspace_json(const Subspace& s) {
    return {{"ambient_dim", s.ambient_dim},
            {"dim", s.dim()},
            {"basis", jsonu::matrix_json(s.basis)}};
}

Subspace subspace_value(const json& j, const std::string& path) {
    Subspace s;
    s.ambient_dim = jsonu::index(jsonu::field(j, "ambient_dim", path), path + ".ambient_dim");
    const std::size_t k = jsonu::index(jsonu::field(j, "dim", path), path + ".dim");
    if (k > s.ambient_dim) jsonu::fail(path + ".dim", "subspace dimension exceeds ambient_dim");
    s.basis = jsonu::matrix_value(jsonu::field(j, "basis", path), s.ambient_dim, k,
                                  path + ".basis");
    return s;
}

json tolerances_json(const Tolerances& t) {
    return {{"cluster_rel", t.cluster_rel},   {"rank_rel", t.rank_rel},
            {"rate_rel", t.rate_rel},         {"residual_rel", t.residual_rel},
            {"ld_norm_per_dim", t.ld_norm_per_dim}, {"herm_rel", t.herm_rel}};
}

Tolerances tolerances_value(const json& j, const std::string& path) {
    Tolerances t;
    t.cluster_rel = jsonu::number(jsonu::field(j, "cluster_rel", path), path + ".cluster_rel");
    t.rank_rel = jsonu::number(jsonu::field(j, "rank_rel", path), path + ".rank_rel");
    t.rate_rel = jsonu::number(jsonu::field(j, "rate_rel", path), path + ".rate_rel");
    t.residual_rel = jsonu::number(jsonu::field(j, "residual_rel", path), path + ".residual_rel");
    t.ld_norm_per_dim =
        jsonu::number(jsonu::field(j, "ld_norm_per_dim", path), path + ".ld_norm_per_dim");
    t.herm_rel = jsonu::number(jsonu::field(j, "herm_rel", path), path + ".herm_rel");
    return t;
}

json record_json(const DfsRecord& r) {
    json j;
    j["tuple"] = tuple_json(r.tuple);
    j["subspace"] = subspace_json(r.basis);
    j["class"] = to_string(r.cls);
    if (r.g) j["g"] = *r.g;
    j["witness_ld_norm"] = r.witness_ld_norm;
    if (r.igc)
        j["igc"] = {{"state_index", r.igc->state_index},
                    {"ld_norm", r.igc->ld_norm},
                    {"max_abs_c", r.igc->max_abs_c},
                    {"noneigen_residual_plain", r.igc->noneigen_residual_plain},
                    {"noneigen_residual_weighted", r.igc->noneigen_residual_weighted}};
    j["h_ev_restricted"] = jsonu::matrix_json(r.h_ev_restricted);
    return j;
}

DfsRecord record_value(const json& j, const std::string& path) {
    DfsRecord r;
    r.tuple = tuple_value(jsonu::field(j, "tuple", path), path + ".tuple");
    r.basis = subspace_value(jsonu::field(j, "subspace", path), path + ".subspace");
    const std::string cls = jsonu::text(jsonu::field(j, "class", path), path + ".class");
    if (cls == "restricted") r.cls = DfsClass::restricted;
    else if (cls == "igc") r.cls = DfsClass::igc;
    else jsonu::fail(path + ".class", "expected \"restricted\" or \"igc\", got \"" + cls + "\"");
    if (const json* g = jsonu::optional_field(j, "g", path))
        r.g = jsonu::number(*g, path + ".g");
    r.witness_ld_norm =
        jsonu::number(jsonu::field(j, "witness_ld_norm", path), path + ".witness_ld_norm");
    if (const json* w = jsonu::optional_field(j, "igc", path)) {
        const std::string wp = path + ".igc";
        IgcWitness iw;
        iw.state_index = jsonu::index(jsonu::field(*w, "state_index", wp), wp + ".state_index");
        iw.ld_norm = jsonu::number(jsonu::field(*w, "ld_norm", wp), wp + ".ld_norm");
        iw.max_abs_c = jsonu::number(jsonu::field(*w, "max_abs_c", wp), wp + ".max_abs_c");
        iw.noneigen_residual_plain = jsonu::number(
            jsonu::field(*w, "noneigen_residual_plain", wp), wp + ".noneigen_residual_plain");
        iw.noneigen_residual_weighted =
            jsonu::number(jsonu::field(*w, "noneigen_residual_weighted", wp),
                          wp + ".noneigen_residual_weighted");
        r.igc = iw;
    }
    const std::size_t k = r.basis.dim();
    r.h_ev_restricted =
        jsonu::matrix_value(jsonu::field(j, "h_ev_restricted", path), k, k,
                            path + ".h_ev_restricted");
    return r;
}

json verification_json(const RecordVerification& v) {
    return {{"record_index", v.record_index},
            {"trials", v.trials},
            {"seed", v.seed},
            {"t_final", v.t_final},
            {"passed", v.passed},
            {"max_purity_drift", v.max_purity_drift},
            {"min_fidelity", v.min_fidelity},
            {"detail", v.detail}};
}

RecordVerification verification_value(const json& j, const std::string& path) {
    RecordVerification v;
    v.record_index = jsonu::index(jsonu::field(j, "record_index", path), path + ".record_index");
    v.trials = jsonu::index(jsonu::field(j, "trials", path), path + ".trials");
    const json& seed = jsonu::field(j, "seed", path);
    if (!seed.is_number_unsigned()) jsonu::fail(path + ".seed", "expected a non-negative integer");
    v.seed = seed.get<std::uint64_t>();
    v.t_final = jsonu::number(jsonu::field(j, "t_final", path), path + ".t_final");
    v.passed = jsonu::boolean(jsonu::field(j, "passed", path), path + ".passed");
    v.max_purity_drift =
        jsonu::number(jsonu::field(j, "max_purity_drift", path), path + ".max_purity_drift");
    v.min_fidelity = jsonu::number(jsonu::field(j, "min_fidelity", path), path + ".min_fidelity");
    v.detail = jsonu::text(jsonu::field(j, "detail", path), path + ".detail");
    return v;
}

json diagnostic_json(const TupleDiagnostic& d) {
    return {{"tuple", tuple_json(d.tuple)},
            {"joint_eigenspace_dim", d.joint_eigenspace_dim},
            {"refine_iterations", d.refine_iterations},
            {"final_dim", d.final_dim},
            {"max_eigen_residual", d.max_eigen_residual},
            {"one_pass_insufficient", d.one_pass_insufficient}};
}

TupleDiagnostic diagnostic_value(const json& j, const std::string& path) {
    TupleDiagnostic d;
    d.tuple = tuple_value(jsonu::field(j, "tuple", path), path + ".tuple");
    d.joint_eigenspace_dim = jsonu::index(jsonu::field(j, "joint_eigenspace_dim", path),
                                          path + ".joint_eigenspace_dim");
    d.refine_iterations =
        jsonu::index(jsonu::field(j, "refine_iterations", path), path + ".refine_iterations");
    d.final_dim = jsonu::index(jsonu::field(j, "final_dim", path), path + ".final_dim");
    d.max_eigen_residual =
        jsonu::number(jsonu::field(j, "max_eigen_residual", path), path + ".max_eigen_residual");
    d.one_pass_insufficient = jsonu::boolean(jsonu::field(j, "one_pass_insufficient", path),
                                             path + ".one_pass_insufficient");
    return d;
}

} // namespace

std::string serialize_report(const AnalysisReport& r) {
    json root;
    root["format"] = std::string(report_format_name) + "/" + std::to_string(report_format_major);
    root["tool_version"] = tool_version;
    root["model_label"] = r.model_label;
    root["dim"] = r.dim;
    root["tolerances"] = tolerances_json(r.tolerances);
    root["tuples_examined"] = r.tuples_examined;
    json recs = json::array();
    for (const auto& rec : r.records) recs.push_back(record_json(rec));
    root["records"] = std::move(recs);
    json diags = json::array();
    for (const auto& d : r.diagnostics) diags.push_back(diagnostic_json(d));
    root["diagnostics"] = std::move(diags);
    json vers = json::array();
    for (const auto& v : r.verification) vers.push_back(verification_json(v));
    root["verification"] = std::move(vers);
    root["notes"] = r.notes;
    return root.dump(2) + "\n";
}

AnalysisReport parse_report(const std::string& text) {
    const json root = jsonu::parse_text(text);
    const std::string p = "report";
    jsonu::check_format(root, report_format_name, report_format_major, p);

    AnalysisReport r;
    r.model_label = jsonu::text(jsonu::field(root, "model_label", p), p + ".model_label");
    r.dim = jsonu::index(jsonu::field(root, "dim", p), p + ".dim");
    r.tolerances = tolerances_value(jsonu::field(root, "tolerances", p), p + ".tolerances");
    r.tuples_examined =
        jsonu::index(jsonu::field(root, "tuples_examined", p), p + ".tuples_examined");

    const json& recs = jsonu::field(root, "records", p);
    if (!recs.is_array()) jsonu::fail(p + ".records", "expected an array");
    for (std::size_t i = 0; i < recs.size(); ++i)
        r.records.push_back(record_value(recs[i], p + ".records[" + std::to_string(i) + "]"));

    const json& diags = jsonu::field(root, "diagnostics", p);
    if (!diags.is_array()) jsonu::fail(p + ".diagnostics", "expected an array");
    for (std::size_t i = 0; i < diags.size(); ++i)
        r.diagnostics.push_back(
            diagnostic_value(diags[i], p + ".diagnostics[" + std::to_string(i) + "]"));

    if (const json* vers = jsonu::optional_field(root, "verification", p)) {
        if (!vers->is_array()) jsonu::fail(p + ".verification", "expected an array");
        for (std::size_t i = 0; i < vers->size(); ++i)
            r.verification.push_back(verification_value(
                (*vers)[i], p + ".verification[" + std::to_string(i) + "]"));
    }

    const json& notes = jsonu::field(root, "notes", p);
    if (!notes.is_array()) jsonu::fail(p + ".notes", "expected an array");
    for (std::size_t i = 0; i < notes.size(); ++i)
        r.notes.push_back(jsonu::text(notes[i], p + ".notes[" + std::to_string(i) + "]"));
    return r;
}

AnalysisReport load_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_report(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_report(const AnalysisReport& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << serialize_report(r);
    if (!out) throw Error("failed writing '" + path + "'");
}

} // namespace qdfs
