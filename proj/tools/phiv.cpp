// Command-line front end: exposes the module computations as subcommands and
// emits versioned JSON (or CSV for coefficient tables).  Exact integers and
// rationals are rendered as decimal strings; floating results carry a `tol`
// sibling where a certified bound exists.  Output is byte-identical for a
// fixed seed.
#include "phiv/acceptance.hpp"
#include "phiv/borcherds.hpp"
#include "phiv/delpezzo.hpp"
#include "phiv/ehgeometry.hpp"
#include "phiv/invariants.hpp"
#include "phiv/lattice.hpp"
#include "phiv/qseries.hpp"
#include "phiv/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

namespace {

using json = nlohmann::ordered_json;
using phiv::intmat::QVec;
using phiv::intmat::ZMat;
using phiv::intmat::ZVec;

constexpr const char* kSchema = "phiv/1";

// ---- parsing --------------------------------------------------------------

mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw CLI::ValidationError("not a rational: " + s);
    q.canonicalize();
    return q;
}

QVec parse_qvec(const std::string& s) {
    QVec out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw CLI::ValidationError("empty vector: " + s);
    return out;
}

phiv::delpezzo::Variant parse_variant(const std::string& v) {
    using phiv::delpezzo::Variant;
    if (v == "generic") return Variant::Generic;
    if (v == "sigma0") return Variant::Sigma0;
    if (v == "sigma1") return Variant::Sigma1;
    if (v == "p2") return Variant::P2;
    throw CLI::ValidationError("unknown variant: " + v);
}

// flat `key = value` config, UTF-8, `#` comments
std::map<std::string, std::string> parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open config: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r");
        size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("malformed config line: " + line);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

const std::string& config_get(const std::map<std::string, std::string>& kv,
                              const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end())
        throw CLI::ValidationError("config key missing: " + key);
    return it->second;
}

// ---- emission -------------------------------------------------------------

std::string q2s(const mpq_class& q) { return q.get_str(); }
std::string z2s(const mpz_class& z) { return z.get_str(); }

json zvec_json(const ZVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(z2s(x));
    return a;
}

json qvec_json(const QVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(q2s(x));
    return a;
}

json zmat_json(const ZMat& m) {
    json a = json::array();
    for (const auto& row : m) a.push_back(zvec_json(row));
    return a;
}

json lattice_json(const phiv::lattice::Lattice& l) {
    auto [p, n] = phiv::lattice::signature(l);
    json j;
    j["name"] = l.name;
    j["rank"] = l.rank();
    j["signature"] = {p, n};
    j["disc"] = z2s(phiv::lattice::discriminant(l));
    j["gram"] = zmat_json(l.gram);
    return j;
}

struct Output {
    std::string path; // empty = stdout
    void emit(const json& j) const {
        json out = j;
        out["schema"] = kSchema;
        std::string text = out.dump(2) + "\n";
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(path);
            if (!f) throw CLI::ValidationError("cannot write: " + path);
            f << text;
        }
    }
    void emit_text(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(path);
            if (!f) throw CLI::ValidationError("cannot write: " + path);
            f << text;
        }
    }
};

// ---- command bodies -------------------------------------------------------

void run_coeffs(const Output& out, int k, long order, bool csv) {
    std::ostringstream csv_text;
    json rows = json::array();
    if (csv) csv_text << "l_times_4,c0,c1\n";
    for (long l4 = -4; l4 <= 4 * order; ++l4) {
        mpq_class l(l4, 4);
        l.canonicalize();
        mpz_class c0 = (l4 % 4 == 0) ? phiv::qseries::coeff_c0(k, l) : 0;
        mpz_class c1 = phiv::qseries::coeff_c1(k, l);
        if (c0 == 0 && c1 == 0) continue;
        if (csv) {
            csv_text << l4 << "," << c0 << "," << c1 << "\n";
        } else {
            json r;
            r["l_times_4"] = std::to_string(l4);
            r["c0"] = z2s(c0);
            r["c1"] = z2s(c1);
            rows.push_back(r);
        }
    }
    if (csv) {
        out.emit_text(csv_text.str());
    } else {
        json j;
        j["k"] = k;
        j["order"] = order;
        j["rows"] = rows;
        out.emit(j);
    }
}

void run_lat_lambda(const Output& out, int k, const std::string& parity) {
    auto par = parity == "even" ? phiv::lattice::Parity::Even
                                : phiv::lattice::Parity::Odd;
    out.emit(lattice_json(phiv::lattice::Lambda_k(k, par)));
}

void run_lat_embed(const Output& out, int k, const std::string& parity,
                   long bound) {
    auto par = parity == "even" ? phiv::lattice::Parity::Even
                                : phiv::lattice::Parity::Odd;
    auto src = phiv::lattice::rescale(phiv::lattice::Lambda_k(k, par), 2);
    auto k3 = phiv::lattice::make_LK3();
    auto emb = phiv::lattice::embedding_search(src, k3, bound, true);
    json j;
    j["source"] = lattice_json(src);
    j["found"] = bool(emb);
    if (emb) {
        j["matrix"] = zmat_json(emb->matrix);
        auto comp = phiv::lattice::orthogonal_complement(*emb);
        j["complement"] = lattice_json(comp.first);
    }
    out.emit(j);
}

void run_dp_info(const Output& out, int degree, const std::string& variant) {
    auto m = phiv::delpezzo::model(degree, parse_variant(variant));
    json j;
    j["degree"] = m.degree;
    j["variant"] = phiv::delpezzo::variant_name(m.variant);
    j["lattice"] = lattice_json(m.picard);
    j["c1"] = zvec_json(m.c1);
    j["minus_one_count"] = m.minus_one_classes.size();
    json gens = json::array();
    for (const auto& g : m.eff_generators) gens.push_back(zvec_json(g));
    j["eff_generators"] = gens;
    out.emit(j);
}

json eval_json(const phiv::borcherds::EvalResult& ev) {
    json j;
    j["log_re"] = ev.log_value.real();
    j["log_im"] = ev.log_value.imag();
    j["value_re"] = ev.value.real();
    j["value_im"] = ev.value.imag();
    j["bound"] = ev.truncation_bound;
    j["tol"] = ev.truncation_bound;
    j["terms"] = ev.terms_used;
    j["factor_vanished"] = ev.factor_vanished;
    return j;
}

phiv::borcherds::TubePoint make_point(const std::string& x,
                                      const std::string& y) {
    phiv::borcherds::TubePoint z;
    z.x = parse_qvec(x);
    z.y = parse_qvec(y);
    if (z.x.size() != z.y.size())
        throw CLI::ValidationError("x and y dimensions differ");
    return z;
}

void run_phi_eval(const Output& out, int degree, const std::string& variant,
                  const std::string& x, const std::string& y,
                  const std::string& cap) {
    auto m = phiv::delpezzo::model(degree, parse_variant(variant));
    auto ev = phiv::borcherds::phi_eval(m, make_point(x, y),
                                        parse_rational(cap));
    out.emit(eval_json(ev));
}

void run_phi_norm(const Output& out, int degree, const std::string& variant,
                  const std::string& x, const std::string& y,
                  const std::string& cap) {
    auto m = phiv::delpezzo::model(degree, parse_variant(variant));
    double n = phiv::borcherds::petersson_norm(m, make_point(x, y),
                                               parse_rational(cap));
    json j;
    j["norm"] = n;
    out.emit(j);
}

json check_json(const phiv::borcherds::CheckReport& r) {
    json j;
    j["discrepancy"] = r.discrepancy;
    j["bound"] = r.bound;
    j["tol"] = 10.0 * r.bound;
    j["pass"] = r.pass;
    return j;
}

void run_phi_check(const Output& out, int degree, const std::string& variant,
                   const std::string& x, const std::string& y,
                   const std::string& cap, std::uint64_t seed) {
    auto m = phiv::delpezzo::model(degree, parse_variant(variant));
    auto z = make_point(x, y);
    auto capq = parse_rational(cap);
    std::mt19937_64 rng(seed);
    ZVec lambda = phiv::borcherds::random_even_translation(m, rng);
    ZMat sigma = phiv::borcherds::standard_weyl_element(m);
    json j;
    j["lambda"] = zvec_json(lambda);
    j["translation"] = check_json(
        phiv::borcherds::translation_check(m, z, lambda, capq));
    j["weyl"] = check_json(
        phiv::borcherds::weyl_symmetry_check(m, z, sigma, capq));
    out.emit(j);
}

void run_phi_qpb(const Output& out, int degree, const std::string& variant,
                 const std::string& x, const std::string& y,
                 const std::string& cap) {
    auto bd = phiv::delpezzo::blow_down(degree, parse_variant(variant));
    std::vector<phiv::borcherds::TubePoint> pts{make_point(x, y)};
    auto cmp = phiv::borcherds::compare_quasi_pullback(bd, pts,
                                                       parse_rational(cap));
    json j;
    j["ratio_re"] = cmp.ratios[0].real();
    j["ratio_im"] = cmp.ratios[0].imag();
    j["bound"] = cmp.max_bound;
    j["tol"] = cmp.max_bound;
    out.emit(j);
}

void run_eh_check(const Output& out, double eps, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> logr(std::log(0.05),
                                                std::log(10.0));
    double max_det = 0, max_scale = 0;
    for (int i = 0; i < n; ++i) {
        phiv::ehgeometry::Z2 z;
        double n2 = 0;
        do {
            z = {phiv::ehgeometry::cplx(unit(rng), unit(rng)),
                 phiv::ehgeometry::cplx(unit(rng), unit(rng))};
            n2 = std::norm(z[0]) + std::norm(z[1]);
        } while (n2 < 1e-4 || n2 > 1.0);
        double scale = std::exp(logr(rng)) / std::sqrt(n2);
        z[0] *= scale;
        z[1] *= scale;
        auto h = phiv::ehgeometry::eh_metric(z, eps);
        max_det = std::max(max_det,
                           std::abs(phiv::ehgeometry::det_herm(h) - 1.0));
        double f = phiv::ehgeometry::eh_potential(z, eps);
        double rt = std::sqrt(eps);
        phiv::ehgeometry::Z2 w = {z[0] / rt, z[1] / rt};
        double fs = eps * phiv::ehgeometry::eh_potential(w, 1.0);
        max_scale = std::max(max_scale,
                             std::abs(f - fs) / std::max(1.0, std::abs(f)));
        auto split = phiv::ehgeometry::error_term(z, eps);
        max_scale = std::max(max_scale,
                             std::abs(split.e - (split.e1 + split.e2)) /
                                 std::max(1.0, std::abs(split.e)));
    }
    json j;
    j["points"] = n;
    j["max_det_dev"] = max_det;
    j["max_scaling_dev"] = max_scale;
    j["tol"] = 1e-8;
    out.emit(j);
}

void run_eh_chern2(const Output& out, double eps, double rmax, int grid) {
    auto r = phiv::ehgeometry::chern2_radial_integral(eps, rmax, grid);
    json j;
    j["integral"] = r.integral;
    j["tol"] = 0.02;
    j["tail_exponent"] = r.tail_exponent;
    j["tail"] = r.tail;
    j["grid_ok"] = r.grid_ok;
    out.emit(j);
}

void run_eh_probe(const Output& out, double delta, const std::string& epses) {
    std::vector<double> grid;
    std::stringstream ss(epses);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
    auto r = phiv::ehgeometry::positivity_probe(phiv::ehgeometry::cutoff,
                                                delta, grid);
    json j;
    j["eps_best"] = r.eps_best;
    json margins = json::array();
    for (auto& [e, m] : r.margins) margins.push_back({e, m});
    j["margins"] = margins;
    out.emit(j);
}

void run_spec_p1(const Output& out, double c, int jmax) {
    auto r = phiv::spectral::p1_torsion_zeta(c, jmax);
    json j;
    j["zeta0"] = r.zeta0;
    j["zeta_prime0"] = r.zeta_prime0;
    j["tau"] = r.tau;
    j["tol"] = 1e-10;
    out.emit(j);
}

void run_spec_cone(const Output& out, double delta, double quad_tol) {
    phiv::spectral::ConeZetaParams params;
    params.delta = delta;
    params.quad_tol = quad_tol;
    auto r = phiv::spectral::cone_zeta_derivative(params);
    json j;
    j["zeta_prime_delta_0"] = r.zeta_prime_delta_0;
    j["divergence_coefficient"] = r.divergence_coefficient;
    j["partial_torsion"] = r.partial_torsion;
    j["tol"] = 1e-3;
    out.emit(j);
}

void run_spec_bost(const Output& out, int d, const std::string& h0i_s,
                   const std::string& tdint_s) {
    std::vector<long> h0i;
    std::stringstream ss(h0i_s);
    std::string item;
    while (std::getline(ss, item, ',')) h0i.push_back(std::stol(item));
    auto e = phiv::spectral::bost_scaling_exponent(d, h0i,
                                                   parse_rational(tdint_s));
    json j;
    j["exponent"] = q2s(e);
    out.emit(j);
}

void run_spec_bcov(const Output& out, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    bool all_equal = true;
    json sample;
    for (int i = 0; i < count; ++i) {
        auto s = phiv::spectral::random_constrained_spectrum(rng);
        auto id = phiv::spectral::bcov_surface_identity(s);
        if (!id.equal) all_equal = false;
        if (i == 0) {
            sample["lhs"] = q2s(id.lhs);
            sample["rhs"] = q2s(id.rhs);
        }
    }
    json j;
    j["count"] = count;
    j["all_equal"] = all_equal;
    j["first"] = sample;
    out.emit(j);
}

phiv::invariants::InvariantInputs config_inputs(
    const std::map<std::string, std::string>& kv) {
    phiv::invariants::InvariantInputs inp;
    inp.k = std::stoi(config_get(kv, "k"));
    inp.tau_Y_gamma = std::stod(config_get(kv, "tau"));
    inp.vol_Y_gamma = std::stod(config_get(kv, "vol"));
    inp.xi_l1_norm = std::stod(config_get(kv, "xi"));
    std::stringstream ss(config_get(kv, "ratios"));
    std::string item;
    while (std::getline(ss, item, ',')) inp.singular_ratios.push_back(std::stod(item));
    inp.bott_chern_integral = std::stod(config_get(kv, "integral"));
    return inp;
}

void run_inv_tau_k(const Output& out, const std::string& config) {
    auto inp = config_inputs(parse_config(config));
    json j;
    j["k"] = inp.k;
    j["tau_k"] = phiv::invariants::tau_k_assemble(inp);
    j["tol"] = 1e-10;
    out.emit(j);
}

void run_inv_tau_bcov(const Output& out, const std::string& config) {
    auto inp = config_inputs(parse_config(config));
    double tk = phiv::invariants::tau_k_assemble(inp);
    json j;
    j["k"] = inp.k;
    j["tau_k"] = tk;
    j["tau_bcov"] = phiv::invariants::tau_bcov_from_tau_k(tk);
    j["tol"] = 1e-10;
    out.emit(j);
}

void run_inv_compare(const Output& out, const std::string& config) {
    auto kv = parse_config(config);
    auto b = phiv::invariants::bcov_comparison_ratio(
        std::stoi(config_get(kv, "k")),
        mpz_class(config_get(kv, "disc_x")),
        mpz_class(config_get(kv, "disc_xtilde")),
        mpz_class(config_get(kv, "coker_q")),
        mpz_class(config_get(kv, "coker_qtilde")));
    json j;
    j["numeric"] = q2s(b.numeric);
    j["symbol"] = b.symbol;
    j["r"] = b.r;
    j["r_tilde"] = b.r_tilde;
    out.emit(j);
}

void run_inv_chi_orb(const Output& out, int k) {
    json j;
    j["k"] = k;
    j["chi_orb"] = std::to_string(phiv::invariants::chi_orb(k));
    out.emit(j);
}

void run_inv_c2(const Output& out, int k) {
    auto c = phiv::invariants::c2_integrals(k);
    json j;
    j["k"] = k;
    j["int_c2_Y_over_24"] = q2s(c.int_c2_Y_over_24);
    j["int_c2_X"] = q2s(c.int_c2_X);
    out.emit(j);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Borcherds products, lattices, and torsion invariants"};
    app.require_subcommand(1);

    std::string out_path;
    std::uint64_t seed = 7;
    app.add_option("--out", out_path, "write output to a file instead of stdout");
    app.add_option("--seed", seed, "random seed for randomized commands");

    // coeffs
    int co_k = 0;
    long co_order = 20;
    bool co_csv = false;
    auto* coeffs = app.add_subcommand("coeffs", "Borcherds exponent tables");
    coeffs->add_option("--k", co_k, "degree parameter")->check(CLI::Range(0, 9));
    coeffs->add_option("--order", co_order, "highest exponent")->check(CLI::Range(0L, 500L));
    coeffs->add_flag("--csv", co_csv, "CSV instead of JSON");

    // lat
    auto* lat = app.add_subcommand("lat", "lattice constructions");
    lat->require_subcommand(1);
    int lat_k = 1;
    std::string lat_parity = "odd";
    long lat_bound = 3;
    auto* lat_lambda = lat->add_subcommand("lambda", "the rank-(12-k) period lattice");
    lat_lambda->add_option("--k", lat_k)->check(CLI::Range(1, 9));
    lat_lambda->add_option("--parity", lat_parity)->check(CLI::IsMember({"odd", "even"}));
    auto* lat_k3 = lat->add_subcommand("k3", "the K3 lattice");
    auto* lat_embed = lat->add_subcommand("embed", "primitive embedding of the doubled lattice");
    lat_embed->add_option("--k", lat_k)->check(CLI::Range(1, 9));
    lat_embed->add_option("--parity", lat_parity)->check(CLI::IsMember({"odd", "even"}));
    lat_embed->add_option("--bound", lat_bound, "coefficient bound");

    // dp
    auto* dp = app.add_subcommand("dp", "Del Pezzo models");
    dp->require_subcommand(1);
    int dp_degree = 6;
    std::string dp_variant = "generic";
    auto* dp_info = dp->add_subcommand("info", "model summary");
    dp_info->add_option("--degree", dp_degree)->check(CLI::Range(1, 9));
    dp_info->add_option("--variant", dp_variant)
        ->check(CLI::IsMember({"generic", "sigma0", "sigma1", "p2"}));

    // phi
    auto* phi = app.add_subcommand("phi", "automorphic product evaluation");
    phi->require_subcommand(1);
    int phi_degree = 6;
    std::string phi_variant = "generic", phi_x, phi_y, phi_cap = "8";
    for (auto* sub : {phi->add_subcommand("eval", "log and value with bound"),
                      phi->add_subcommand("norm", "Petersson norm"),
                      phi->add_subcommand("check", "translation and Weyl checks"),
                      phi->add_subcommand("qpb", "quasi-pullback ratio")}) {
        sub->add_option("--degree", phi_degree)->check(CLI::Range(1, 9));
        sub->add_option("--variant", phi_variant)
            ->check(CLI::IsMember({"generic", "sigma0", "sigma1", "p2"}));
        sub->add_option("--x", phi_x, "real part, comma-separated rationals")->required();
        sub->add_option("--y", phi_y, "imaginary part, comma-separated rationals")->required();
        sub->add_option("--cap", phi_cap, "product height cap");
    }

    // eh
    auto* eh = app.add_subcommand("eh", "Eguchi-Hanson geometry");
    eh->require_subcommand(1);
    double eh_eps = 1.0, eh_delta = 0.1, eh_rmax = 40.0;
    int eh_grid = 256, eh_n = 1000;
    std::string eh_eps_grid = "0.05,0.1,0.2";
    auto* eh_check = eh->add_subcommand("check", "metric determinant and scaling residuals");
    eh_check->add_option("--eps", eh_eps);
    eh_check->add_option("--n", eh_n, "sample points")->check(CLI::Range(1, 1000000));
    auto* eh_chern2 = eh->add_subcommand("chern2", "radial second-Chern integral");
    eh_chern2->add_option("--eps", eh_eps);
    eh_chern2->add_option("--rmax", eh_rmax);
    eh_chern2->add_option("--grid", eh_grid);
    auto* eh_probe = eh->add_subcommand("probe", "glued-metric positivity probe");
    eh_probe->add_option("--delta", eh_delta);
    eh_probe->add_option("--eps-grid", eh_eps_grid, "comma-separated eps values");

    // spec
    auto* spec = app.add_subcommand("spec", "spectral zeta quantities");
    spec->require_subcommand(1);
    double sp_c = 1.0, sp_delta = 0.1, sp_quadtol = 1e-11;
    int sp_jmax = 40, sp_count = 100, sp_d = 1;
    std::string sp_h0i = "1,0", sp_tdint = "0";
    auto* sp_p1 = spec->add_subcommand("p1", "P^1 torsion zeta");
    sp_p1->add_option("--c", sp_c, "spectrum scale");
    sp_p1->add_option("--jmax", sp_jmax);
    auto* sp_cone = spec->add_subcommand("cone", "flat-cone partial zeta");
    sp_cone->add_option("--delta", sp_delta);
    sp_cone->add_option("--quadtol", sp_quadtol);
    auto* sp_bost = spec->add_subcommand("bost", "metric scaling exponent");
    sp_bost->add_option("--d", sp_d, "complex dimension");
    sp_bost->add_option("--h0i", sp_h0i, "comma-separated h^{0,i}");
    sp_bost->add_option("--tdint", sp_tdint, "Td' integral as a rational");
    auto* sp_bcov = spec->add_subcommand("bcov-surface", "surface torsion identity");
    sp_bcov->add_option("--count", sp_count)->check(CLI::Range(1, 100000));

    // inv
    auto* inv = app.add_subcommand("inv", "torsion invariant assembly");
    inv->require_subcommand(1);
    std::string inv_config;
    int inv_k = 1;
    auto* inv_tauk = inv->add_subcommand("tau-k", "assemble tau_k from a config");
    inv_tauk->add_option("--config", inv_config)->required();
    auto* inv_bcov = inv->add_subcommand("tau-bcov", "tau_k and tau_BCOV");
    inv_bcov->add_option("--config", inv_config)->required();
    auto* inv_cmp = inv->add_subcommand("compare", "lattice/BCOV comparison ratio");
    inv_cmp->add_option("--config", inv_config)->required();
    auto* inv_chi = inv->add_subcommand("chi-orb", "orbifold Euler number");
    inv_chi->add_option("--k", inv_k)->check(CLI::Range(1, 10));
    auto* inv_c2 = inv->add_subcommand("c2", "second Chern integrals");
    inv_c2->add_option("--k", inv_k)->check(CLI::Range(1, 10));

    // accept
    auto* accept = app.add_subcommand("accept", "run the acceptance suite");

    // let the global options (--out, --seed) appear after any subcommand name
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        a->fallthrough();
        for (auto* sc : a->get_subcommands([](const CLI::App*) { return true; }))
            enable_fallthrough(sc);
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    Output out{out_path};
    try {
        if (coeffs->parsed()) run_coeffs(out, co_k, co_order, co_csv);
        else if (lat_lambda->parsed()) run_lat_lambda(out, lat_k, lat_parity);
        else if (lat_k3->parsed()) out.emit(lattice_json(phiv::lattice::make_LK3()));
        else if (lat_embed->parsed()) run_lat_embed(out, lat_k, lat_parity, lat_bound);
        else if (dp_info->parsed()) run_dp_info(out, dp_degree, dp_variant);
        else if (phi->parsed()) {
            auto* sub = phi->get_subcommands().front();
            if (sub->get_name() == "eval")
                run_phi_eval(out, phi_degree, phi_variant, phi_x, phi_y, phi_cap);
            else if (sub->get_name() == "norm")
                run_phi_norm(out, phi_degree, phi_variant, phi_x, phi_y, phi_cap);
            else if (sub->get_name() == "check")
                run_phi_check(out, phi_degree, phi_variant, phi_x, phi_y, phi_cap, seed);
            else
                run_phi_qpb(out, phi_degree, phi_variant, phi_x, phi_y, phi_cap);
        } else if (eh_check->parsed()) run_eh_check(out, eh_eps, eh_n, seed);
        else if (eh_chern2->parsed()) run_eh_chern2(out, eh_eps, eh_rmax, eh_grid);
        else if (eh_probe->parsed()) run_eh_probe(out, eh_delta, eh_eps_grid);
        else if (sp_p1->parsed()) run_spec_p1(out, sp_c, sp_jmax);
        else if (sp_cone->parsed()) run_spec_cone(out, sp_delta, sp_quadtol);
        else if (sp_bost->parsed()) run_spec_bost(out, sp_d, sp_h0i, sp_tdint);
        else if (sp_bcov->parsed()) run_spec_bcov(out, sp_count, seed);
        else if (inv_tauk->parsed()) run_inv_tau_k(out, inv_config);
        else if (inv_bcov->parsed()) run_inv_tau_bcov(out, inv_config);
        else if (inv_cmp->parsed()) run_inv_compare(out, inv_config);
        else if (inv_chi->parsed()) run_inv_chi_orb(out, inv_k);
        else if (inv_c2->parsed()) run_inv_c2(out, inv_k);
        else if (accept->parsed()) {
            std::ostringstream report;
            bool ok = phiv::acceptance::run(seed, report);
            out.emit_text(report.str());
            return ok ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
