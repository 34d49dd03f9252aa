#include "qdfs/gallery.hpp"

#include <algorithm>
#include <cmath>

#include "qdfs/kernels.hpp"
#include "qdfs/rng.hpp"

namespace qdfs {

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const Complex f = a(i1, j1);
            if (f == Complex(0, 0)) continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    out(i1 * b.rows() + i2, j1 * b.cols() + j2) = f * b(i2, j2);
        }
    return out;
}

// op acting on one site of an N-qubit register (site 0 = first tensor factor).
ComplexMatrix on_site(const ComplexMatrix& op, int site, int n_sites) {
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (int s = 0; s < n_sites; ++s)
        out = kron(out, s == site ? op : ComplexMatrix::identity(2));
    return out;
}

ComplexMatrix ketbra(std::size_t dim, std::size_t i, std::size_t j) {
    ComplexMatrix m(dim, dim);
    m(i, j) = Complex(1, 0);
    return m;
}

void require_truncation(int n_max, double alpha) {
    const int needed = static_cast<int>(std::ceil(4.0 * alpha * alpha + 10.0));
    if (n_max < needed)
        throw TruncationTooSmall("n_max = " + std::to_string(n_max) +
                                 " too small for alpha = " + std::to_string(alpha) +
                                 " (need at least " + std::to_string(needed) + ")");
}

double get_param(const std::map<std::string, double>& params,
                 const std::map<std::string, double>& defaults, const std::string& key) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    return defaults.at(key);
}

void reject_unknown(const std::map<std::string, double>& params,
                    const std::map<std::string, double>& defaults, const std::string& name) {
    for (const auto& [k, v] : params)
        if (!defaults.count(k))
            throw InvalidParameter("gallery model '" + name + "' has no parameter '" + k + "'");
}

} // namespace

ComplexMatrix sigma_minus() { return ketbra(2, 0, 1); }
ComplexMatrix sigma_plus() { return ketbra(2, 1, 0); }

ComplexMatrix sigma_x() {
    ComplexMatrix m(2, 2);
    m(0, 1) = m(1, 0) = Complex(1, 0);
    return m;
}

ComplexMatrix sigma_y() {
    ComplexMatrix m(2, 2);
    m(0, 1) = Complex(0, 1);
    m(1, 0) = Complex(0, -1);
    return m;
}

ComplexMatrix sigma_z() {
    ComplexMatrix m(2, 2);
    m(0, 0) = Complex(-1, 0);
    m(1, 1) = Complex(1, 0);
    return m;
}

std::string convention_note() {
    return "two-level convention: basis (|0>,|1>), |1> excited, sigma_minus=|0><1|, "
           "sigma_y=i(sigma_minus-sigma_plus); fixed by requiring the excited state of "
           "the igc_two_level model to be stationary";
}

ComplexMatrix truncated_annihilation(int n_max) {
    if (n_max < 1) throw InvalidParameter("truncated_annihilation: n_max must be >= 1");
    const std::size_t dim = static_cast<std::size_t>(n_max) + 1;
    ComplexMatrix a(dim, dim);
    for (std::size_t n = 1; n < dim; ++n)
        a(n - 1, n) = Complex(std::sqrt(static_cast<double>(n)), 0);
    return a;
}

ComplexMatrix number_operator(int n_max) {
    const std::size_t dim = static_cast<std::size_t>(n_max) + 1;
    ComplexMatrix n_op(dim, dim);
    for (std::size_t n = 0; n < dim; ++n) n_op(n, n) = Complex(static_cast<double>(n), 0);
    return n_op;
}

ComplexMatrix coherent_state(int n_max, Complex alpha) {
    const std::size_t dim = static_cast<std::size_t>(n_max) + 1;
    ComplexMatrix psi(dim, 1);
    Complex amp(1, 0);
    psi(0, 0) = amp;
    for (std::size_t n = 1; n < dim; ++n) {
        amp *= alpha / std::sqrt(static_cast<double>(n));
        psi(n, 0) = amp;
    }
    const double nrm = vec_norm(psi);
    psi *= Complex(1.0 / nrm, 0);
    return psi;
}

MasterEquationModel three_level_counterexample() {
    MasterEquationModel m;
    m.label = "three_level_counterexample";
    m.dim = 3;
    m.h_eff = ComplexMatrix(3, 3);

    // Decay operators |0><1|, |0><2| first, completed to a full traceless
    // basis; the coefficient matrix couples only the first two.
    GksDissipator g;
    g.basis.push_back(ketbra(3, 0, 1));
    g.basis.push_back(ketbra(3, 0, 2));
    g.basis.push_back(ketbra(3, 1, 0));
    g.basis.push_back(ketbra(3, 2, 0));
    g.basis.push_back(ketbra(3, 1, 2));
    g.basis.push_back(ketbra(3, 2, 1));
    ComplexMatrix d1(3, 3);
    d1(0, 0) = Complex(1 / std::sqrt(2.0), 0);
    d1(1, 1) = Complex(-1 / std::sqrt(2.0), 0);
    g.basis.push_back(d1);
    ComplexMatrix d2(3, 3);
    d2(0, 0) = d2(1, 1) = Complex(1 / std::sqrt(6.0), 0);
    d2(2, 2) = Complex(-2 / std::sqrt(6.0), 0);
    g.basis.push_back(d2);

    g.coeff = ComplexMatrix(8, 8);
    g.coeff(0, 0) = g.coeff(0, 1) = g.coeff(1, 0) = g.coeff(1, 1) = Complex(1, 0);
    m.dissipator = std::move(g);
    return m;
}

MasterEquationModel two_level_nonsemisimple() {
    MasterEquationModel m;
    m.label = "two_level_nonsemisimple";
    m.dim = 2;
    m.h_eff = ComplexMatrix(2, 2);
    DiagonalLindblad d;
    d.terms.push_back({1.0, ketbra(2, 1, 1)});
    ComplexMatrix j2(2, 2);
    j2(0, 0) = j2(0, 1) = Complex(1, 0);
    d.terms.push_back({1.0, j2});
    m.dissipator = std::move(d);
    return m;
}

MasterEquationModel igc_two_level() {
    MasterEquationModel m;
    m.label = "igc_two_level";
    m.dim = 2;
    m.h_eff = sigma_y();
    DiagonalLindblad d;
    d.terms.push_back({2.0, sigma_plus() + sigma_z()});
    m.dissipator = std::move(d);
    return m;
}

MasterEquationModel squeezed_vacuum_two_level(double r, double gamma0, int branch) {
    if (r < 0) throw InvalidParameter("squeezed_vacuum_two_level: r must be >= 0");
    if (!(gamma0 > 0)) throw InvalidParameter("squeezed_vacuum_two_level: gamma0 must be positive");
    if (branch != 1 && branch != -1)
        throw InvalidParameter("squeezed_vacuum_two_level: branch must be +1 or -1");
    const double ch = std::cosh(r), sh = std::sinh(r);

    MasterEquationModel m;
    m.label = "squeezed_vacuum_two_level";
    m.dim = 2;
    m.h_eff = sigma_y() * (branch * 0.5 * gamma0 * std::sqrt(sh * ch) * (sh - ch));
    DiagonalLindblad d;
    d.terms.push_back({gamma0, sigma_minus() * ch + sigma_plus() * sh});
    m.dissipator = std::move(d);
    return m;
}

MasterEquationModel dicke_squeezed(int n_atoms, double r, double gamma, int n_plus) {
    if (n_atoms < 1) throw InvalidParameter("dicke_squeezed: n_atoms must be >= 1");
    if (n_atoms > 8)
        throw TooLarge("dicke_squeezed: n_atoms = " + std::to_string(n_atoms) +
                       " exceeds the supported maximum of 8");
    if (n_plus < 0 || n_plus > n_atoms)
        throw InvalidParameter("dicke_squeezed: n_plus must lie in [0, n_atoms]");
    if (r < 0) throw InvalidParameter("dicke_squeezed: r must be >= 0");
    if (!(gamma > 0)) throw InvalidParameter("dicke_squeezed: gamma must be positive");
    const double ch = std::cosh(r), sh = std::sinh(r);
    const std::size_t dim = std::size_t{1} << n_atoms;

    ComplexMatrix site_jump = sigma_minus() * ch + sigma_plus() * sh;
    ComplexMatrix jump(dim, dim);
    ComplexMatrix s_y(dim, dim);
    for (int n = 0; n < n_atoms; ++n) {
        jump += on_site(site_jump, n, n_atoms);
        s_y += on_site(sigma_y(), n, n_atoms);
    }

    const double weight = static_cast<double>(2 * n_plus - n_atoms);
    MasterEquationModel m;
    m.label = "dicke_squeezed";
    m.dim = dim;
    m.h_eff = s_y * (0.5 * gamma * weight * std::sqrt(sh * ch) * (sh - ch));
    DiagonalLindblad d;
    d.terms.push_back({gamma, std::move(jump)});
    m.dissipator = std::move(d);
    return m;
}

MasterEquationModel damped_oscillator_truncated(int n_max, double omega0, double gamma,
                                                double alpha, bool driven) {
    if (!(gamma > 0)) throw InvalidParameter("damped_oscillator_truncated: gamma must be positive");
    require_truncation(n_max, alpha);
    const std::size_t dim = static_cast<std::size_t>(n_max) + 1;
    ComplexMatrix a = truncated_annihilation(n_max);

    MasterEquationModel m;
    m.label = "damped_oscillator_truncated";
    m.dim = dim;
    if (driven) {
        // Resonantly driven, written in the frame rotating at omega0 (which
        // therefore drops out of the Hamiltonian): H = (i gamma / 2)
        // (alpha a^dag - conj(alpha) a) holds |alpha> steady against the decay.
        ComplexMatrix h = a.adjoint() * (Complex(0, 0.5 * gamma) * Complex(alpha, 0));
        h += a * (Complex(0, -0.5 * gamma) * Complex(alpha, 0));
        m.h_eff = h.hermitian_part();
    } else {
        m.h_eff = number_operator(n_max) * omega0;
    }
    DiagonalLindblad d;
    d.terms.push_back({gamma, std::move(a)});
    m.dissipator = std::move(d);
    m.truncated_demo = true;
    return m;
}

MasterEquationModel two_photon_absorber_truncated(int n_max, double gamma, double alpha) {
    if (!(gamma > 0)) throw InvalidParameter("two_photon_absorber_truncated: gamma must be positive");
    require_truncation(n_max, alpha);
    const std::size_t dim = static_cast<std::size_t>(n_max) + 1;
    ComplexMatrix a = truncated_annihilation(n_max);
    ComplexMatrix a2 = a * a;

    // Pairing Hamiltonian (i gamma / 2)(alpha^2 a^dag^2 - conj(alpha)^2 a^2);
    // with the jump a^2 this keeps |alpha> and |-alpha> pure (checked by the
    // stationarity test in the suite).
    const Complex al2 = Complex(alpha, 0) * Complex(alpha, 0);
    ComplexMatrix h = a2.adjoint() * (Complex(0, 0.5 * gamma) * al2);
    h += a2 * (Complex(0, -0.5 * gamma) * std::conj(al2));

    MasterEquationModel m;
    m.label = "two_photon_absorber_truncated";
    m.dim = dim;
    m.h_eff = h.hermitian_part();
    DiagonalLindblad d;
    d.terms.push_back({gamma, std::move(a2)});
    m.dissipator = std::move(d);
    m.truncated_demo = true;
    return m;
}

RandomKind random_kind_from_string(const std::string& s) {
    if (s == "generic") return RandomKind::generic;
    if (s == "dephasing") return RandomKind::dephasing;
    if (s == "decay") return RandomKind::decay;
    if (s == "normal") return RandomKind::normal;
    throw InvalidParameter("unknown random model kind '" + s + "'");
}

namespace {

// Diagonal with well-separated complex entries in shuffled order. The
// separation (>= 0.4 between any two) keeps decoherence rates between
// distinct eigenvalues O(1), which the exhaustiveness oracle relies on to
// tell near-DFS states from slow decay within its finite horizon.
ComplexMatrix separated_diagonal(std::size_t dim, Rng& rng) {
    std::vector<double> base(dim);
    const double sep = rng.uniform(0.6, 1.0);
    for (std::size_t i = 0; i < dim; ++i)
        base[i] = sep * (static_cast<double>(i) - 0.5 * static_cast<double>(dim - 1));
    for (std::size_t i = dim; i > 1; --i)
        std::swap(base[i - 1], base[rng.next_u64() % i]);
    ComplexMatrix d(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        d(i, i) = Complex(base[i] + 0.08 * sep * rng.gaussian() * 0.5,
                          0.08 * sep * rng.gaussian() * 0.5);
    return d;
}

} // namespace

MasterEquationModel random_model(std::size_t dim, std::size_t n_jumps, RandomKind kind,
                                 std::uint64_t seed) {
    if (dim < 1) throw InvalidParameter("random_model: dim must be >= 1");
    if (dim > 16) throw TooLarge("random_model: dim > 16 not supported");
    if (n_jumps < 1 || n_jumps > dim * dim - 1)
        throw InvalidParameter("random_model: n_jumps out of range");
    Rng rng(seed, 0xA11CE);

    MasterEquationModel m;
    m.dim = dim;
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] = 0.5 * rng.complex_gaussian();
    m.h_eff = g.hermitian_part();

    ComplexMatrix u;
    if (kind == RandomKind::normal) {
        ComplexMatrix raw(dim, dim);
        for (std::size_t i = 0; i < raw.size(); ++i) raw.data()[i] = rng.complex_gaussian();
        u = orthonormalize_cols(raw, 1e-12).basis;
        if (u.cols() != dim) u = ComplexMatrix::identity(dim); // degenerate draw
    }

    DiagonalLindblad d;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t l = 0; l < n_jumps; ++l) {
        ComplexMatrix j(dim, dim);
        switch (kind) {
        case RandomKind::generic:
            for (std::size_t i = 0; i < j.size(); ++i)
                j.data()[i] = scale * rng.complex_gaussian();
            break;
        case RandomKind::dephasing:
            j = separated_diagonal(dim, rng);
            break;
        case RandomKind::decay:
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = r + 1; c < dim; ++c)
                    j(r, c) = scale * rng.complex_gaussian();
            break;
        case RandomKind::normal:
            j = u * separated_diagonal(dim, rng) * u.adjoint();
            break;
        }
        d.terms.push_back({rng.uniform(0.5, 2.0), std::move(j)});
    }
    m.dissipator = std::move(d);

    const char* kind_name = kind == RandomKind::generic     ? "generic"
                            : kind == RandomKind::dephasing ? "dephasing"
                            : kind == RandomKind::decay     ? "decay"
                                                            : "normal";
    m.label = std::string("random-") + kind_name + "-" + std::to_string(seed);
    return m;
}

const std::vector<GalleryEntry>& gallery_entries() {
    static const std::vector<GalleryEntry> entries = [] {
        std::vector<GalleryEntry> v;
        v.push_back({"three_level_counterexample",
                     "three-level correlated decay with a two-dimensional dark subspace",
                     {},
                     std::vector<ExpectedDfs>{{2, DfsClass::restricted}}});
        v.push_back({"two_level_nonsemisimple",
                     "two jumps whose joint eigenvector is not dissipation-free; no DFS",
                     {},
                     std::vector<ExpectedDfs>{}});
        v.push_back({"igc_two_level",
                     "excited state held pure by H = sigma_y while the dissipator acts on it",
                     {},
                     std::vector<ExpectedDfs>{{1, DfsClass::igc}}});
        v.push_back({"squeezed_vacuum_two_level",
                     "qubit in squeezed vacuum; branch picks the stabilized jump eigenstate",
                     {{"r", 0.5}, {"gamma0", 1.0}, {"branch", 1.0}},
                     std::vector<ExpectedDfs>{{1, DfsClass::igc}}});
        v.push_back({"dicke_squeezed",
                     "collective squeezed decay of n_atoms qubits, tuned to the n_plus sector",
                     {{"n_atoms", 3}, {"r", 0.5}, {"gamma", 1.0}, {"n_plus", 2}},
                     std::vector<ExpectedDfs>{{3, DfsClass::igc}}});
        v.push_back({"damped_oscillator_truncated",
                     "damped oscillator on a Fock cutoff; driven=1 holds |alpha> pure "
                     "(rotating frame, propagation demo only)",
                     {{"n_max", 24}, {"omega0", 1.0}, {"gamma", 1.0}, {"alpha", 1.0}, {"driven", 1}},
                     std::vector<ExpectedDfs>{}});
        v.push_back({"two_photon_absorber_truncated",
                     "two-photon absorber with the pairing Hamiltonian that keeps |+-alpha> pure",
                     {{"n_max", 30}, {"gamma", 1.0}, {"alpha", 1.0}},
                     std::vector<ExpectedDfs>{}});
        v.push_back({"random",
                     "seeded random model; kind: 0=generic 1=dephasing 2=decay 3=normal",
                     {{"dim", 4}, {"jumps", 2}, {"kind", 0}, {"seed", 1}},
                     std::nullopt});
        return v;
    }();
    return entries;
}

MasterEquationModel gallery_build(const std::string& name,
                                  const std::map<std::string, double>& params) {
    const GalleryEntry* entry = nullptr;
    for (const auto& e : gallery_entries())
        if (e.name == name) entry = &e;
    if (!entry) throw InvalidParameter("unknown gallery model '" + name + "'");
    reject_unknown(params, entry->defaults, name);
    auto p = [&](const char* key) { return get_param(params, entry->defaults, key); };

    if (name == "three_level_counterexample") return three_level_counterexample();
    if (name == "two_level_nonsemisimple") return two_level_nonsemisimple();
    if (name == "igc_two_level") return igc_two_level();
    if (name == "squeezed_vacuum_two_level")
        return squeezed_vacuum_two_level(p("r"), p("gamma0"), static_cast<int>(p("branch")));
    if (name == "dicke_squeezed")
        return dicke_squeezed(static_cast<int>(p("n_atoms")), p("r"), p("gamma"),
                              static_cast<int>(p("n_plus")));
    if (name == "damped_oscillator_truncated")
        return damped_oscillator_truncated(static_cast<int>(p("n_max")), p("omega0"), p("gamma"),
                                           p("alpha"), p("driven") != 0);
    if (name == "two_photon_absorber_truncated")
        return two_photon_absorber_truncated(static_cast<int>(p("n_max")), p("gamma"), p("alpha"));
    if (name == "random") {
        const int kind = static_cast<int>(p("kind"));
        if (kind < 0 || kind > 3) throw InvalidParameter("random: kind must be 0..3");
        return random_model(static_cast<std::size_t>(p("dim")),
                            static_cast<std::size_t>(p("jumps")),
                            static_cast<RandomKind>(kind),
                            static_cast<std::uint64_t>(p("seed")));
    }
    throw InvalidParameter("unknown gallery model '" + name + "'");
}

} // namespace qdfs
