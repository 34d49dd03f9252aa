// Batch front end: analyze / verify / gallery / propagate over JSON model
// files. stdout carries data (tables, emitted models, time series); stderr
// carries diagnostics. Exit codes: 0 success, 1 input error, 2 numerical
// failure or integrator cap, 3 analyze found no DFS, 4 verification failure.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qdfs/engine.hpp"
#include "qdfs/gallery.hpp"
#include "qdfs/model_io.hpp"
#include "qdfs/oracle.hpp"
#include "qdfs/report_io.hpp"
#include "qdfs/version.hpp"

namespace {

using namespace qdfs;

// Input-shaped problems (bad files, bad parameters, invalid models) exit 1;
// anything numerical (non-convergence, step caps) exits 2.
int exit_code_for(const Error& e) {
    if (dynamic_cast<const StepCapExceeded*>(&e)) return 2;
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidParameter*>(&e) ||
        dynamic_cast<const NotSquare*>(&e) || dynamic_cast<const NotHermitian*>(&e) ||
        dynamic_cast<const NotPsd*>(&e) || dynamic_cast<const DimensionMismatch*>(&e) ||
        dynamic_cast<const NotNormalized*>(&e) || dynamic_cast<const NotDensityMatrix*>(&e) ||
        dynamic_cast<const InvalidSubspace*>(&e) || dynamic_cast<const TooLarge*>(&e) ||
        dynamic_cast<const TruncationTooSmall*>(&e) || dynamic_cast<const WrongForm*>(&e))
        return 1;
    return 2;
}

template <typename F> int guarded(F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

std::string format_complex(Complex z, int prec = 6) {
    std::ostringstream ss;
    ss << std::setprecision(prec) << z.real();
    ss << (z.imag() < 0 ? "-" : "+") << std::setprecision(prec) << std::abs(z.imag()) << "i";
    return ss.str();
}

std::string format_tuple(const EigTuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ", ";
        s += format_complex(t[i], 4);
    }
    return s + ")";
}

struct TolCli {
    std::string profile;
    ToleranceOverrides o;

    void attach(CLI::App* sub) {
        sub->add_option("--tol-profile", profile,
                        "tolerance profile: default, strict, loose (overrides QDFS_TOL_PROFILE)");
        sub->add_option("--cluster-rel", o.cluster_rel, "eigenvalue clustering radius (relative)");
        sub->add_option("--rank-rel", o.rank_rel, "rank cut for nullspaces (relative)");
        sub->add_option("--rate-rel", o.rate_rel, "rate floor relative to trace(A)");
        sub->add_option("--residual-rel", o.residual_rel, "eigen-membership residual (relative)");
        sub->add_option("--ld-norm-per-dim", o.ld_norm_per_dim,
                        "dissipator-norm threshold per dimension");
        sub->add_option("--herm-rel", o.herm_rel, "Hermiticity check (relative)");
    }

    // profile/env base, then model-file overrides, then CLI flags on top.
    Tolerances resolve(const MasterEquationModel& m) const {
        Tolerances base =
            profile.empty() ? Tolerances::from_env() : Tolerances::profile(profile);
        return o.apply(effective_tolerances(m, base));
    }
};

std::string default_report_path(const std::string& model_path) {
    std::filesystem::path p(model_path);
    p.replace_filename(p.stem().string() + ".report.json");
    return p.string();
}

void print_report_table(const AnalysisReport& rep, std::ostream& out) {
    out << "model: " << (rep.model_label.empty() ? "(unlabeled)" : rep.model_label)
        << "  (dim " << rep.dim << ")\n";
    out << "tuples examined: " << rep.tuples_examined << "\n";
    out << "DFS records: " << rep.records.size() << "\n";
    if (!rep.records.empty()) {
        out << "\n  #  dim  class       g             witness |L_D|  tuple\n";
        for (std::size_t i = 0; i < rep.records.size(); ++i) {
            const auto& r = rep.records[i];
            std::ostringstream g;
            if (r.g) g << std::setprecision(6) << *r.g;
            else g << "-";
            out << "  " << std::left << std::setw(3) << i << std::setw(5) << r.basis.dim()
                << std::setw(12) << to_string(r.cls) << std::setw(14) << g.str()
                << std::setw(15) << std::setprecision(3) << std::scientific
                << r.witness_ld_norm << std::defaultfloat << format_tuple(r.tuple) << "\n";
        }
    }
    if (!rep.notes.empty()) {
        out << "\nnotes:\n";
        for (const auto& n : rep.notes) out << "  - " << n << "\n";
    }
}

int run_analyze(const std::string& model_path, const std::string& out_path, const TolCli& tol) {
    MasterEquationModel m = load_model(model_path);
    const Tolerances eff = tol.resolve(m);
    AnalysisReport rep = find_all_dfs(m, eff);
    print_report_table(rep, std::cout);
    const std::string dest = out_path.empty() ? default_report_path(model_path) : out_path;
    save_report(rep, dest);
    std::cerr << "report written to " << dest << "\n";
    if (rep.records.empty()) {
        std::cerr << "no DFS found\n";
        return 3;
    }
    return 0;
}

int run_verify(const std::string& model_path, const std::string& report_path, std::size_t trials,
               std::uint64_t seed, double t_final, const std::string& out_path) {
    MasterEquationModel m = load_model(model_path);
    AnalysisReport rep = load_report(report_path);
    if (rep.model_label != m.label)
        throw InvalidParameter("report label '" + rep.model_label + "' does not match model '" +
                               m.label + "'");
    if (rep.dim != m.dim)
        throw DimensionMismatch("report dim " + std::to_string(rep.dim) +
                                " does not match model dim " + std::to_string(m.dim));

    rep.verification.clear();
    bool all_pass = true;
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
        const auto& rec = rep.records[i];
        VerifyOutcome out = verify_dfs_record(m, rec, trials, seed, t_final);
        all_pass = all_pass && out.pass;
        std::cout << "record " << i << ": dim " << rec.basis.dim() << " " << to_string(rec.cls)
                  << " -> " << (out.pass ? "PASS" : "FAIL") << "  (trials " << trials
                  << ", max purity drift " << std::setprecision(3) << std::scientific
                  << out.max_purity_drift << ", min fidelity deficit " << 1.0 - out.min_fidelity
                  << std::defaultfloat << ")\n";
        if (!out.pass) std::cout << "  first failure: " << out.failure << "\n";

        RecordVerification v;
        v.record_index = i;
        v.trials = trials;
        v.seed = seed;
        v.t_final = t_final > 0 ? t_final : default_t_final(m);
        v.passed = out.pass;
        v.max_purity_drift = out.max_purity_drift;
        v.min_fidelity = out.min_fidelity;
        v.detail = out.failure;
        rep.verification.push_back(std::move(v));
    }
    if (rep.records.empty()) std::cout << "report has no DFS records; nothing to verify\n";
    if (!out_path.empty()) {
        save_report(rep, out_path);
        std::cerr << "updated report written to " << out_path << "\n";
    }
    if (!all_pass) {
        std::cerr << "verification failed\n";
        return 4;
    }
    return 0;
}

int run_gallery_list() {
    for (const auto& e : gallery_entries()) {
        std::cout << e.name << "\n    " << e.summary << "\n";
        if (!e.defaults.empty()) {
            std::cout << "    params:";
            for (const auto& [k, v] : e.defaults) std::cout << " " << k << "=" << v;
            std::cout << "\n";
        }
        if (e.expected) {
            std::cout << "    expected:";
            if (e.expected->empty()) std::cout << " no DFS";
            for (const auto& x : *e.expected)
                std::cout << " [dim " << x.dim << " " << to_string(x.cls) << "]";
            std::cout << "\n";
        }
    }
    return 0;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> params;
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InvalidParameter("--param expects key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(val, &used);
        } catch (const std::exception&) {
            throw InvalidParameter("--param " + key + ": '" + val + "' is not a number");
        }
        if (used != val.size())
            throw InvalidParameter("--param " + key + ": '" + val + "' is not a number");
        params[key] = v;
    }
    return params;
}

int run_gallery_emit(const std::string& name, const std::vector<std::string>& kvs,
                     const std::string& out_path) {
    MasterEquationModel m = gallery_build(name, parse_params(kvs));
    if (out_path.empty()) {
        std::cout << serialize_model(m);
    } else {
        save_model(m, out_path);
        std::cerr << "model written to " << out_path << "\n";
    }
    return 0;
}

int run_propagate(const std::string& model_path, const std::string& state_arg, double t_final,
                  std::size_t steps, bool fixed, const std::string& out_path,
                  const TolCli& tol) {
    MasterEquationModel m = load_model(model_path);
    const Tolerances eff = tol.resolve(m);

    ComplexMatrix rho0;
    std::optional<ComplexMatrix> ref;
    bool is_index = !state_arg.empty() &&
                    state_arg.find_first_not_of("0123456789") == std::string::npos;
    if (is_index) {
        // Index into the analyzer's DFS records: start from the uniform
        // superposition of the record basis, reference the record's
        // evolution Hamiltonian (so fidelity 1 is the expected outcome).
        const std::size_t idx = std::stoul(state_arg);
        AnalysisReport rep = find_all_dfs(m, eff);
        if (idx >= rep.records.size())
            throw InvalidParameter("--state " + state_arg + ": analysis found only " +
                                   std::to_string(rep.records.size()) + " DFS record(s)");
        const auto& rec = rep.records[idx];
        ComplexMatrix psi(m.dim, 1);
        for (std::size_t j = 0; j < rec.basis.dim(); ++j) psi += rec.basis.basis.col(j);
        psi *= Complex(1.0 / vec_norm(psi), 0);
        rho0 = outer(psi, psi);
        ref = evolution_hamiltonian(ensure_diagonal(m, eff), rec.tuple);
    } else {
        ComplexMatrix st = load_state(state_arg, m.dim);
        rho0 = st.cols() == 1 ? outer(st, st) : st;
    }

    PropagateOptions opt;
    opt.t_final = t_final;
    opt.initial_steps = steps;
    opt.richardson = !fixed;
    opt.unitary_ref = ref;
    TrajectoryResult tr = propagate(m, rho0, opt);

    std::ostringstream body;
    body << "# " << (m.label.empty() ? "(unlabeled)" : m.label) << "  t_final="
         << (t_final > 0 ? t_final : default_t_final(m)) << "  steps=" << tr.steps_used
         << "  reference=" << (is_index ? "record evolution Hamiltonian" : "H_eff") << "\n";
    body << "# t purity fidelity\n";
    body << std::setprecision(12);
    body << 0.0 << " " << purity(rho0) << " " << 1.0 << "\n";
    for (std::size_t k = 0; k < tr.times.size(); ++k)
        body << tr.times[k] << " " << tr.purities[k] << " " << tr.fidelities[k] << "\n";

    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(out_path, std::ios::trunc);
        if (!f) throw Error("cannot open '" + out_path + "' for writing");
        f << body.str();
        std::cerr << "time series written to " << out_path << "\n";
    }
    std::cerr << "steps used: " << tr.steps_used << ", trace drift " << std::setprecision(3)
              << std::scientific << tr.trace_drift << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decoherence-free subspace analyzer for Markovian master equations"};
    app.set_version_flag("--version", std::string(qdfs::tool_version));
    app.require_subcommand(1);

    int rc = 0;

    auto* analyze = app.add_subcommand(
        "analyze", "enumerate and classify the DFS of a model file; table on stdout, "
                   "report JSON to --out (default <model>.report.json)");
    std::string an_model, an_out;
    TolCli an_tol;
    analyze->add_option("model", an_model, "model file (qdfs-model JSON)")->required();
    analyze->add_option("-o,--out", an_out, "report output path");
    an_tol.attach(analyze);
    analyze->callback([&] { rc = guarded([&] { return run_analyze(an_model, an_out, an_tol); }); });

    auto* verify = app.add_subcommand(
        "verify", "re-check every DFS record of a report by seeded density-matrix propagation");
    std::string ve_model, ve_report, ve_out;
    std::size_t ve_trials = 20;
    std::uint64_t ve_seed = 42;
    double ve_tfinal = 0;
    verify->add_option("model", ve_model, "model file")->required();
    verify->add_option("report", ve_report, "report file produced by analyze")->required();
    verify->add_option("--trials", ve_trials, "random states per record (default 20)");
    verify->add_option("--seed", ve_seed, "RNG seed (default 42)");
    verify->add_option("--t-final", ve_tfinal, "horizon; <= 0 means 10 / max rate");
    verify->add_option("-o,--out", ve_out, "write the report back with verification results");
    verify->callback([&] {
        rc = guarded(
            [&] { return run_verify(ve_model, ve_report, ve_trials, ve_seed, ve_tfinal, ve_out); });
    });

    auto* gallery = app.add_subcommand("gallery", "built-in model collection");
    gallery->require_subcommand(1);
    auto* glist = gallery->add_subcommand("list", "list models, parameters, expected outcomes");
    glist->callback([&] { rc = guarded([] { return run_gallery_list(); }); });
    auto* gemit = gallery->add_subcommand("emit", "write a gallery model file");
    std::string ge_name, ge_out;
    std::vector<std::string> ge_params;
    gemit->add_option("name", ge_name, "model name (see gallery list)")->required();
    gemit->add_option("--param", ge_params, "parameter override key=value (repeatable)");
    gemit->add_option("-o,--out", ge_out, "output path (default stdout)");
    gemit->callback(
        [&] { rc = guarded([&] { return run_gallery_emit(ge_name, ge_params, ge_out); }); });

    auto* propagate = app.add_subcommand(
        "propagate", "integrate the master equation, emitting t/purity/fidelity columns");
    std::string pr_model, pr_state = "0", pr_out;
    double pr_tfinal = 0;
    std::size_t pr_steps = 64;
    bool pr_fixed = false;
    TolCli pr_tol;
    propagate->add_option("model", pr_model, "model file")->required();
    propagate->add_option("--state", pr_state,
                          "DFS record index (default 0) or a qdfs-state JSON file");
    propagate->add_option("--t-final", pr_tfinal, "horizon; <= 0 means 10 / max rate");
    propagate->add_option("--steps", pr_steps, "initial RK4 step count (default 64)");
    propagate->add_flag("--fixed", pr_fixed, "run exactly --steps steps (no refinement)");
    propagate->add_option("-o,--out", pr_out, "output path (default stdout)");
    pr_tol.attach(propagate);
    propagate->callback([&] {
        rc = guarded([&] {
            return run_propagate(pr_model, pr_state, pr_tfinal, pr_steps, pr_fixed, pr_out, pr_tol);
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    return rc;
}
