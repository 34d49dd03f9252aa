// End-to-end tests that drive the installed CLI binary as a subprocess.
// Invocation: qdfs_cli_tests <path-to-qdfs-binary> [doctest options]

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "qdfs/gallery.hpp"
#include "qdfs/model_io.hpp"
#include "qdfs/report_io.hpp"

using namespace qdfs;

namespace {

std::string g_bin;
std::filesystem::path g_work;

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    const std::filesystem::path out = g_work / "stdout.txt";
    const std::filesystem::path err = g_work / "stderr.txt";
    const std::string cmd =
        "'" + g_bin + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.status = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string wpath(const std::string& name) { return (g_work / name).string(); }

// Data rows of a propagate dump: vectors of (t, purity, fidelity).
std::vector<std::array<double, 3>> parse_series(const std::string& text) {
    std::vector<std::array<double, 3>> rows;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::array<double, 3> row{};
        ls >> row[0] >> row[1] >> row[2];
        REQUIRE(static_cast<bool>(ls));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST_CASE("--version prints the tool version") {
    RunResult r = run_cli("--version");
    CHECK(r.status == 0);
    CHECK(r.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("gallery list names every model") {
    RunResult r = run_cli("gallery list");
    CHECK(r.status == 0);
    for (const auto& e : gallery_entries())
        CHECK(r.out.find(e.name) != std::string::npos);
    CHECK(r.out.find("expected: no DFS") != std::string::npos);
}

TEST_CASE("emit / analyze / verify round trip on the three-level model") {
    RunResult em = run_cli("gallery emit three_level_counterexample --out '" +
                           wpath("m3.json") + "'");
    REQUIRE(em.status == 0);

    RunResult an = run_cli("analyze '" + wpath("m3.json") + "' -o '" + wpath("m3.report.json") + "'");
    REQUIRE(an.status == 0);
    CHECK(an.out.find("DFS records: 1") != std::string::npos);
    CHECK(an.out.find("restricted") != std::string::npos);
    CHECK(an.err.find("report written to") != std::string::npos);

    AnalysisReport rep = load_report(wpath("m3.report.json"));
    REQUIRE(rep.records.size() == 1);
    CHECK(rep.records[0].basis.dim() == 2);

    RunResult ve = run_cli("verify '" + wpath("m3.json") + "' '" + wpath("m3.report.json") +
                           "' --trials 5 --seed 7");
    CHECK(ve.status == 0);
    CHECK(ve.out.find("PASS") != std::string::npos);
    CHECK(ve.out.find("FAIL") == std::string::npos);

    // bit-for-bit determinism of the seeded verification
    RunResult ve2 = run_cli("verify '" + wpath("m3.json") + "' '" + wpath("m3.report.json") +
                            "' --trials 5 --seed 7");
    CHECK(ve2.status == 0);
    CHECK(ve2.out == ve.out);
}

TEST_CASE("verify rejects a corrupted record basis") {
    REQUIRE(run_cli("gallery emit three_level_counterexample --out '" + wpath("bad_m.json") + "'")
                .status == 0);
    REQUIRE(run_cli("analyze '" + wpath("bad_m.json") + "' -o '" + wpath("bad_r.json") + "'")
                .status == 0);

    // Rotate the non-|0> basis column onto plain |1>: still orthonormal,
    // but |1> radiates, so propagation must catch it.
    AnalysisReport rep = load_report(wpath("bad_r.json"));
    REQUIRE(rep.records.size() == 1);
    ComplexMatrix e1(3, 1);
    e1(1, 0) = 1.0;
    bool replaced = false;
    for (std::size_t j = 0; j < rep.records[0].basis.dim(); ++j) {
        if (std::abs(rep.records[0].basis.basis(0, j)) < 0.5) {
            rep.records[0].basis.basis.set_col(j, e1);
            replaced = true;
        }
    }
    REQUIRE(replaced);
    CHECK(rep.records[0].basis.orthonormality_defect() < 1e-9);
    save_report(rep, wpath("bad_r.json"));

    RunResult ve = run_cli("verify '" + wpath("bad_m.json") + "' '" + wpath("bad_r.json") +
                           "' --trials 5 --seed 7");
    CHECK(ve.status == 4);
    CHECK(ve.out.find("FAIL") != std::string::npos);
    CHECK(ve.err.find("verification failed") != std::string::npos);
}

TEST_CASE("analyze exits 3 when no DFS exists") {
    REQUIRE(run_cli("gallery emit two_level_nonsemisimple --out '" + wpath("none.json") + "'")
                .status == 0);
    RunResult an = run_cli("analyze '" + wpath("none.json") + "'");
    CHECK(an.status == 3);
    CHECK(an.out.find("DFS records: 0") != std::string::npos);
    CHECK(an.err.find("no DFS found") != std::string::npos);
    // default report path lands next to the model
    CHECK(std::filesystem::exists(wpath("none.report.json")));
}

TEST_CASE("propagate a decaying state from a state file") {
    MasterEquationModel m;
    m.label = "cli-decay";
    m.dim = 2;
    m.h_eff = ComplexMatrix(2, 2);
    DiagonalLindblad d;
    d.terms.push_back({1.0, sigma_minus()});
    m.dissipator = std::move(d);
    save_model(m, wpath("decay.json"));
    std::ofstream(wpath("excited.json"))
        << "{\"format\":\"qdfs-state/1\",\"kind\":\"psi\",\"dim\":2,\"data\":[[0,0],[1,0]]}";

    RunResult pr = run_cli("propagate '" + wpath("decay.json") + "' --state '" +
                           wpath("excited.json") + "' --t-final 5");
    REQUIRE(pr.status == 0);
    auto rows = parse_series(pr.out);
    REQUIRE(rows.size() == 65); // t = 0 plus 64 checkpoints
    CHECK(rows.front()[1] == doctest::Approx(1.0));
    double min_purity = 1.0;
    for (const auto& r : rows) min_purity = std::min(min_purity, r[1]);
    CHECK(min_purity < 0.51);  // passes through the maximally mixed point
    CHECK(min_purity > 0.49);
    CHECK(rows.back()[1] > 0.98); // and ends almost pure (ground state)
}

TEST_CASE("propagate a DFS record by index: purity and fidelity stay at 1") {
    REQUIRE(run_cli("gallery emit igc_two_level --out '" + wpath("igc.json") + "'").status == 0);
    RunResult pr = run_cli("propagate '" + wpath("igc.json") + "' --state 0 --t-final 10");
    REQUIRE(pr.status == 0);
    CHECK(pr.out.find("record evolution Hamiltonian") != std::string::npos);
    auto rows = parse_series(pr.out);
    REQUIRE(rows.size() == 65);
    for (const auto& r : rows) {
        CHECK(std::abs(r[1] - 1.0) < 1e-6);
        CHECK(r[2] > 1.0 - 1e-6);
    }

    RunResult bad = run_cli("propagate '" + wpath("igc.json") + "' --state 5");
    CHECK(bad.status == 1);
    CHECK(bad.err.find("only 1 DFS record") != std::string::npos);
}

TEST_CASE("input errors exit 1 with a diagnostic") {
    RunResult nofile = run_cli("analyze '" + wpath("does_not_exist.json") + "'");
    CHECK(nofile.status == 1);
    CHECK(nofile.err.find("cannot open") != std::string::npos);

    RunResult noname = run_cli("gallery emit nosuch");
    CHECK(noname.status == 1);
    CHECK(noname.err.find("unknown gallery model") != std::string::npos);

    RunResult badparam = run_cli("gallery emit igc_two_level --param r=fast");
    CHECK(badparam.status == 1);

    // non-Hermitian h_eff: rejected by model validation
    std::ofstream(wpath("nonherm.json"))
        << "{\"format\":\"qdfs-model/1\",\"dim\":2,"
           "\"h_eff\":[[0,0],[1,0],[0,0],[0,0]],"
           "\"dissipator\":{\"diagonal\":[{\"lambda\":1,\"J\":[[0,0],[1,0],[0,0],[0,0]]}]}}";
    RunResult herm = run_cli("analyze '" + wpath("nonherm.json") + "'");
    CHECK(herm.status == 1);
    CHECK(herm.err.find("h_eff") != std::string::npos);

    // missing subcommand is a usage error
    CHECK(run_cli("").status == 1);
}

TEST_CASE("full pipeline over the whole gallery") {
    for (const auto& e : gallery_entries()) {
        CAPTURE(e.name);
        const std::string mp = wpath("pipe_" + e.name + ".json");
        const std::string rp = wpath("pipe_" + e.name + ".report.json");
        REQUIRE(run_cli("gallery emit " + e.name + " --out '" + mp + "'").status == 0);
        RunResult an = run_cli("analyze '" + mp + "' -o '" + rp + "'");
        REQUIRE((an.status == 0 || an.status == 3));
        AnalysisReport rep = load_report(rp);
        if (e.expected) CHECK(rep.records.size() == e.expected->size());
        if (an.status == 3) {
            CHECK(rep.records.empty());
            continue;
        }
        RunResult ve = run_cli("verify '" + mp + "' '" + rp + "' --trials 3 --seed 11 -o '" + rp +
                               "'");
        CHECK(ve.status == 0);
        // the written-back report carries the verification summary
        AnalysisReport after = load_report(rp);
        CHECK(after.verification.size() == after.records.size());
        for (const auto& v : after.verification) CHECK(v.passed);
    }
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: qdfs_cli_tests <qdfs-binary> [doctest options]\n";
        return 64;
    }
    g_bin = argv[1];
    if (!std::filesystem::exists(g_bin)) {
        std::cerr << "qdfs binary not found: " << g_bin << "\n";
        return 64;
    }
    g_work = std::filesystem::temp_directory_path() / "qdfs_cli_work";
    std::filesystem::create_directories(g_work);

    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    const int rc = ctx.run();
    std::error_code ec;
    std::filesystem::remove_all(g_work, ec);
    return rc;
}
