/// @file harness.cpp
/// @brief JSON config handling, scenario construction, artifact I/O, and the
/// run / audit / report / sweep commands.

#include "anse/harness.hpp"

#include "anse/ops.hpp"
#include "anse/text_format.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace anse {
namespace {

using njson = nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;
constexpr const char* kCodeVersion = "anse 1.0.0";

const std::array<const char*, 6> kScenarios = {
    "taylor_green", "pure_shear",      "free_decay",
    "shear_stability", "forced_h2",    "custom"};

const std::array<const char*, 5> kInequalityIds = {
    "triple_product", "linfty_l1", "poincare_wall", "poincare_mean",
    "transport_orthogonality"};

const std::array<const char*, 3> kEnvelopes = {"constant", "exponential_decay",
                                               "ramp_off"};

template <std::size_t N>
bool contains_name(const std::array<const char*, N>& names,
                   const std::string& s) {
    for (const char* n : names)
        if (s == n) return true;
    return false;
}

template <std::size_t N>
std::string join_names(const std::array<const char*, N>& names) {
    std::string out;
    for (std::size_t i = 0; i < N; ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    return out;
}

/// Reject keys outside the allowed set; prefix gives the error's key path.
void check_keys(const njson& obj, const std::string& prefix,
                std::initializer_list<const char*> allowed,
                const std::string& origin) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (item.key() == a) {
                known = true;
                break;
            }
        if (!known)
            throw ParseError(origin + ": unknown key \"" + prefix + item.key() +
                             "\"");
    }
}

/// Typed access to one (possibly absent) config block. Absent blocks hand
/// every lookup its fallback; wrong value types raise ParseError naming the
/// full key path.
struct Block {
    const njson* obj = nullptr;
    std::string prefix;
    const std::string* origin = nullptr;

    const njson* find(const char* key) const {
        if (!obj) return nullptr;
        auto it = obj->find(key);
        return it == obj->end() ? nullptr : &*it;
    }
    bool has(const char* key) const { return find(key) != nullptr; }

    [[noreturn]] void fail(const std::string& key, const char* want) const {
        throw ParseError(*origin + ": key " + prefix + key + " must be " + want);
    }

    int get_int(const char* key, int fallback) const {
        const njson* v = find(key);
        if (!v) return fallback;
        if (!v->is_number_integer()) fail(key, "an integer");
        return v->get<int>();
    }
    long long get_ll(const char* key, long long fallback) const {
        const njson* v = find(key);
        if (!v) return fallback;
        if (!v->is_number_integer()) fail(key, "an integer");
        return v->get<long long>();
    }
    std::uint64_t get_u64(const char* key, std::uint64_t fallback) const {
        const njson* v = find(key);
        if (!v) return fallback;
        if (!v->is_number_integer() ||
            (!v->is_number_unsigned() && v->get<long long>() < 0))
            fail(key, "a nonnegative integer");
        return v->get<std::uint64_t>();
    }
    double get_double(const char* key, double fallback) const {
        const njson* v = find(key);
        if (!v) return fallback;
        if (!v->is_number()) fail(key, "a number");
        return v->get<double>();
    }
    bool get_bool(const char* key, bool fallback) const {
        const njson* v = find(key);
        if (!v) return fallback;
        if (!v->is_boolean()) fail(key, "a boolean");
        return v->get<bool>();
    }
    std::string get_string(const char* key, std::string fallback) const {
        const njson* v = find(key);
        if (!v) return fallback;
        if (!v->is_string()) fail(key, "a string");
        return v->get<std::string>();
    }
    std::vector<double> get_double_array(const char* key,
                                         std::vector<double> fallback) const {
        const njson* v = find(key);
        if (!v) return fallback;
        if (!v->is_array()) fail(key, "an array of numbers");
        std::vector<double> out;
        out.reserve(v->size());
        for (const auto& e : *v) {
            if (!e.is_number()) fail(key, "an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }
    std::vector<std::string> get_string_array(
        const char* key, std::vector<std::string> fallback) const {
        const njson* v = find(key);
        if (!v) return fallback;
        if (!v->is_array()) fail(key, "an array of strings");
        std::vector<std::string> out;
        out.reserve(v->size());
        for (const auto& e : *v) {
            if (!e.is_string()) fail(key, "an array of strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    }
    std::vector<ModeSpec> get_modes(const char* key,
                                    std::vector<ModeSpec> fallback) const {
        const njson* v = find(key);
        if (!v) return fallback;
        if (!v->is_array()) fail(key, "an array of {k1, k2, re, im} objects");
        std::vector<ModeSpec> out;
        out.reserve(v->size());
        for (std::size_t i = 0; i < v->size(); ++i) {
            const njson& e = (*v)[i];
            const std::string p = prefix + key + "[" + std::to_string(i) + "]";
            if (!e.is_object())
                throw ParseError(*origin + ": key " + p +
                                 " must be an object with k1, k2, re, im");
            check_keys(e, p + ".", {"k1", "k2", "re", "im"}, *origin);
            auto need_int = [&](const char* k) {
                auto it = e.find(k);
                if (it == e.end() || !it->is_number_integer())
                    throw ParseError(*origin + ": key " + p + "." + k +
                                     " must be an integer");
                return it->get<int>();
            };
            auto opt_num = [&](const char* k) {
                auto it = e.find(k);
                if (it == e.end()) return 0.0;
                if (!it->is_number())
                    throw ParseError(*origin + ": key " + p + "." + k +
                                     " must be a number");
                return it->get<double>();
            };
            ModeSpec m;
            m.k1 = need_int("k1");
            m.k2 = need_int("k2");
            m.re = opt_num("re");
            m.im = opt_num("im");
            out.push_back(m);
        }
        return out;
    }
};

Block open_block(const njson& root, const char* name,
                 std::initializer_list<const char*> allowed,
                 const std::string& origin) {
    Block b;
    b.prefix = std::string(name) + ".";
    b.origin = &origin;
    auto it = root.find(name);
    if (it == root.end()) return b;
    if (!it->is_object())
        throw ParseError(origin + ": key " + name + " must be an object");
    check_keys(*it, b.prefix, allowed, origin);
    b.obj = &*it;
    return b;
}

bool forcing_is_zero(const ForcingConfig& f) {
    if (f.amplitude == 0.0) return true;
    if (!f.psi_modes.empty()) return false;
    for (double c : f.fbar1)
        if (c != 0.0) return false;
    return true;
}

RunConfig parse_config_json(const njson& root, const std::string& origin) {
    if (!root.is_object())
        throw ParseError(origin + ": top-level JSON value must be an object");
    check_keys(root,
               "", {"scenario", "grid", "stepper", "initial", "forcing",
                    "monitors", "output", "audit"},
               origin);

    RunConfig cfg;
    std::vector<std::string> bad;

    if (auto it = root.find("scenario"); it != root.end()) {
        if (!it->is_string())
            throw ParseError(origin + ": key scenario must be a string");
        cfg.scenario = it->get<std::string>();
    }
    const bool scenario_ok = contains_name(kScenarios, cfg.scenario);
    if (!scenario_ok)
        bad.push_back("scenario: must be one of " + join_names(kScenarios) +
                      " (got \"" + cfg.scenario + "\")");

    // Scenario-specific defaults; explicit keys below override them.
    if (cfg.scenario == "free_decay") cfg.initial.amplitude = 0.02;
    if (cfg.scenario == "forced_h2") {
        cfg.initial.amplitude = 0.1;
        cfg.forcing.amplitude = 0.5;
        cfg.forcing.psi_modes = {ModeSpec{1, 1, 0.0, -0.5}};
        cfg.forcing.envelope = "exponential_decay";
        cfg.forcing.rate = 1.0;
    }

    const Block grid = open_block(
        root, "grid", {"nx", "ny", "dealias_num", "dealias_den"}, origin);
    cfg.grid.nx = grid.get_int("nx", cfg.grid.nx);
    cfg.grid.ny = grid.get_int("ny", cfg.grid.ny);
    cfg.grid.dealias_num = grid.get_int("dealias_num", cfg.grid.dealias_num);
    cfg.grid.dealias_den = grid.get_int("dealias_den", cfg.grid.dealias_den);

    const Block st = open_block(
        root, "stepper", {"dt", "dt_max", "cfl", "t_end", "scheme"}, origin);
    cfg.stepper.dt = st.get_double("dt", cfg.stepper.dt);
    cfg.stepper.dt_max = st.get_double("dt_max", cfg.stepper.dt_max);
    cfg.stepper.cfl = st.get_double("cfl", cfg.stepper.cfl);
    cfg.stepper.t_end = st.get_double("t_end", cfg.stepper.t_end);
    cfg.stepper.scheme = st.get_string("scheme", cfg.stepper.scheme);

    const Block init = open_block(root, "initial",
                                  {"amplitude", "seed", "kmax", "shear_slope",
                                   "epsilon", "psi_modes", "ubar"},
                                  origin);
    cfg.initial.amplitude = init.get_double("amplitude", cfg.initial.amplitude);
    cfg.initial.seed = init.get_u64("seed", cfg.initial.seed);
    cfg.initial.kmax = init.get_int("kmax", cfg.initial.kmax);
    cfg.initial.shear_slope =
        init.get_double("shear_slope", cfg.initial.shear_slope);
    cfg.initial.epsilon = init.get_double("epsilon", cfg.initial.epsilon);
    cfg.initial.psi_modes = init.get_modes("psi_modes", cfg.initial.psi_modes);
    cfg.initial.ubar = init.get_double_array("ubar", cfg.initial.ubar);

    const Block fo = open_block(
        root, "forcing",
        {"amplitude", "psi_modes", "fbar1", "envelope", "rate", "t_off"},
        origin);
    cfg.forcing.amplitude = fo.get_double("amplitude", cfg.forcing.amplitude);
    cfg.forcing.psi_modes = fo.get_modes("psi_modes", cfg.forcing.psi_modes);
    cfg.forcing.fbar1 = fo.get_double_array("fbar1", cfg.forcing.fbar1);
    cfg.forcing.envelope = fo.get_string("envelope", cfg.forcing.envelope);
    cfg.forcing.rate = fo.get_double("rate", cfg.forcing.rate);
    cfg.forcing.t_off = fo.get_double("t_off", cfg.forcing.t_off);

    // Energy decay holds only without forcing, so its default follows the
    // resolved forcing block; an explicit key still wins.
    cfg.monitors.energy_decay = forcing_is_zero(cfg.forcing);

    const Block mo = open_block(
        root, "monitors",
        {"velocity_bound", "dissipation_bound", "vorticity_bound",
         "vorticity_dissipation_bound", "identities", "energy_decay",
         "margin_rel_tol", "identity_rel_tol"},
        origin);
    cfg.monitors.velocity_bound =
        mo.get_bool("velocity_bound", cfg.monitors.velocity_bound);
    cfg.monitors.dissipation_bound =
        mo.get_bool("dissipation_bound", cfg.monitors.dissipation_bound);
    cfg.monitors.vorticity_bound =
        mo.get_bool("vorticity_bound", cfg.monitors.vorticity_bound);
    cfg.monitors.vorticity_dissipation_bound = mo.get_bool(
        "vorticity_dissipation_bound", cfg.monitors.vorticity_dissipation_bound);
    cfg.monitors.identities = mo.get_bool("identities", cfg.monitors.identities);
    cfg.monitors.energy_decay =
        mo.get_bool("energy_decay", cfg.monitors.energy_decay);
    cfg.monitors.margin_rel_tol =
        mo.get_double("margin_rel_tol", cfg.monitors.margin_rel_tol);
    cfg.monitors.identity_rel_tol =
        mo.get_double("identity_rel_tol", cfg.monitors.identity_rel_tol);

    const Block ou = open_block(
        root, "output", {"run_dir", "snapshot_every", "diagnostics_every"},
        origin);
    cfg.output.run_dir = ou.get_string("run_dir", cfg.output.run_dir);
    cfg.output.snapshot_every =
        ou.get_int("snapshot_every", cfg.output.snapshot_every);
    cfg.output.diagnostics_every =
        ou.get_int("diagnostics_every", cfg.output.diagnostics_every);

    const Block au = open_block(
        root, "audit",
        {"n_trials", "kmax", "seed", "inequalities", "adversarial_iters"},
        origin);
    cfg.audit.n_trials = au.get_ll("n_trials", cfg.audit.n_trials);
    cfg.audit.kmax = au.get_int("kmax", cfg.audit.kmax);
    cfg.audit.seed = au.get_u64("seed", cfg.audit.seed);
    cfg.audit.inequalities =
        au.get_string_array("inequalities", cfg.audit.inequalities);
    cfg.audit.adversarial_iters =
        au.get_ll("adversarial_iters", cfg.audit.adversarial_iters);

    // --- validation: collect every violation, then throw once -------------
    const bool grid_ok = cfg.grid.nx >= 4 && cfg.grid.nx % 2 == 0 &&
                         cfg.grid.ny >= 2 && cfg.grid.dealias_num >= 1 &&
                         cfg.grid.dealias_den >= cfg.grid.dealias_num;
    if (!(cfg.grid.nx >= 4 && cfg.grid.nx % 2 == 0))
        bad.push_back("grid.nx: must be an even integer >= 4 (got " +
                      std::to_string(cfg.grid.nx) + ")");
    if (cfg.grid.ny < 2)
        bad.push_back("grid.ny: must be >= 2 (got " +
                      std::to_string(cfg.grid.ny) + ")");
    if (!(cfg.grid.dealias_num >= 1 &&
          cfg.grid.dealias_den >= cfg.grid.dealias_num))
        bad.push_back(
            "grid.dealias_num/dealias_den: fraction must lie in (0, 1] (got " +
            std::to_string(cfg.grid.dealias_num) + "/" +
            std::to_string(cfg.grid.dealias_den) + ")");

    if (cfg.stepper.dt < 0.0)
        bad.push_back("stepper.dt: must be >= 0 (0 selects the CFL step)");
    if (cfg.stepper.dt_max <= 0.0) bad.push_back("stepper.dt_max: must be > 0");
    if (!(cfg.stepper.cfl > 0.0 && cfg.stepper.cfl <= 1.0))
        bad.push_back("stepper.cfl: must lie in (0, 1]");
    if (cfg.stepper.t_end <= 0.0) bad.push_back("stepper.t_end: must be > 0");
    if (cfg.stepper.scheme != "rk3")
        bad.push_back("stepper.scheme: only \"rk3\" is implemented (got \"" +
                      cfg.stepper.scheme + "\")");

    if (cfg.initial.amplitude < 0.0)
        bad.push_back("initial.amplitude: must be >= 0");
    if (cfg.initial.kmax < 1) bad.push_back("initial.kmax: must be >= 1");
    if (cfg.initial.epsilon <= 0.0)
        bad.push_back("initial.epsilon: must be > 0");
    if (cfg.scenario == "custom" && cfg.initial.psi_modes.empty() &&
        cfg.initial.ubar.empty())
        bad.push_back(
            "initial: the custom scenario needs psi_modes and/or ubar");

    auto check_mode_bounds = [&](const std::vector<ModeSpec>& modes,
                                 const char* where) {
        if (!grid_ok) return;  // bounds below would be meaningless
        const int k1_hi = cfg.grid.nx / 2 - 1;
        const int k2_hi = cfg.grid.ny - 1;
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const std::string p =
                std::string(where) + "[" + std::to_string(i) + "]";
            if (modes[i].k1 < 1 || modes[i].k1 > k1_hi)
                bad.push_back(p + ".k1: must lie in [1, nx/2 - 1] = [1, " +
                              std::to_string(k1_hi) + "] (got " +
                              std::to_string(modes[i].k1) + ")");
            if (modes[i].k2 < 1 || modes[i].k2 > k2_hi)
                bad.push_back(p + ".k2: must lie in [1, ny - 1] = [1, " +
                              std::to_string(k2_hi) + "] (got " +
                              std::to_string(modes[i].k2) + ")");
        }
    };
    check_mode_bounds(cfg.initial.psi_modes, "initial.psi_modes");
    check_mode_bounds(cfg.forcing.psi_modes, "forcing.psi_modes");
    if (grid_ok &&
        cfg.initial.ubar.size() > static_cast<std::size_t>(cfg.grid.ny) + 1)
        bad.push_back("initial.ubar: at most ny + 1 = " +
                      std::to_string(cfg.grid.ny + 1) + " coefficients (got " +
                      std::to_string(cfg.initial.ubar.size()) + ")");
    if (grid_ok &&
        cfg.forcing.fbar1.size() > static_cast<std::size_t>(cfg.grid.ny) + 1)
        bad.push_back("forcing.fbar1: at most ny + 1 = " +
                      std::to_string(cfg.grid.ny + 1) + " coefficients (got " +
                      std::to_string(cfg.forcing.fbar1.size()) + ")");

    if (cfg.forcing.amplitude < 0.0)
        bad.push_back("forcing.amplitude: must be >= 0");
    if (!contains_name(kEnvelopes, cfg.forcing.envelope))
        bad.push_back("forcing.envelope: must be one of " +
                      join_names(kEnvelopes) + " (got \"" +
                      cfg.forcing.envelope + "\")");
    if (cfg.forcing.envelope == "exponential_decay" && cfg.forcing.rate <= 0.0)
        bad.push_back("forcing.rate: must be > 0 for exponential_decay");
    if (cfg.forcing.envelope == "ramp_off" && cfg.forcing.t_off <= 0.0)
        bad.push_back("forcing.t_off: must be > 0 for ramp_off");

    if (cfg.monitors.margin_rel_tol < 0.0)
        bad.push_back("monitors.margin_rel_tol: must be >= 0");
    if (cfg.monitors.identity_rel_tol < 0.0)
        bad.push_back("monitors.identity_rel_tol: must be >= 0");

    if (cfg.output.snapshot_every < 0)
        bad.push_back("output.snapshot_every: must be >= 0");
    if (cfg.output.diagnostics_every < 1)
        bad.push_back("output.diagnostics_every: must be >= 1");

    if (cfg.audit.n_trials < 1) bad.push_back("audit.n_trials: must be >= 1");
    if (cfg.audit.kmax < 1) bad.push_back("audit.kmax: must be >= 1");
    if (cfg.audit.adversarial_iters < 0)
        bad.push_back("audit.adversarial_iters: must be >= 0");
    if (cfg.audit.inequalities.empty())
        bad.push_back("audit.inequalities: must not be empty");
    for (const std::string& id : cfg.audit.inequalities)
        if (!contains_name(kInequalityIds, id))
            bad.push_back("audit.inequalities: unknown id \"" + id +
                          "\" (known: " + join_names(kInequalityIds) + ")");

    if (!bad.empty()) {
        std::string msg = origin + ": ";
        for (std::size_t i = 0; i < bad.size(); ++i) {
            if (i) msg += "; ";
            msg += bad[i];
        }
        throw ValidationError(msg);
    }
    return cfg;
}

njson modes_to_json(const std::vector<ModeSpec>& modes) {
    njson arr = njson::array();
    for (const ModeSpec& m : modes) {
        njson e;
        e["k1"] = m.k1;
        e["k2"] = m.k2;
        e["re"] = m.re;
        e["im"] = m.im;
        arr.push_back(std::move(e));
    }
    return arr;
}

Envelope make_envelope(const ForcingConfig& fc) {
    Envelope e;
    if (fc.envelope == "constant") {
        e.type = EnvelopeType::Constant;
    } else if (fc.envelope == "exponential_decay") {
        e.type = EnvelopeType::ExponentialDecay;
    } else {
        e.type = EnvelopeType::RampOff;
    }
    e.rate = fc.rate;
    e.t_off = fc.t_off;
    return e;
}

/// Cosine coefficients of the linear profile a*y on [0, 1]:
/// a/2 for k = 0, -4a / (pi^2 k^2) for odd k, 0 for even k.
std::vector<double> linear_shear_cosine(int ny, double a) {
    std::vector<double> ubar(static_cast<std::size_t>(ny) + 1, 0.0);
    ubar[0] = 0.5 * a;
    for (int k = 1; k <= ny; k += 2)
        ubar[static_cast<std::size_t>(k)] = -4.0 * a / (kPi * kPi * k * k);
    return ubar;
}

/// Set one Hermitian mode pair of a stream function.
void set_mode_pair(Spectrum& s, const ModeSpec& m, double amplitude) {
    const std::complex<double> z{amplitude * m.re, amplitude * m.im};
    s.coeff(m.k1, m.k2) = z;
    s.coeff(-m.k1, m.k2) = std::conj(z);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string utc_now() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file_or_throw(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + path);
}

njson manifest_json(const RunConfig& cfg, const std::string& status,
                    const std::string& started, const std::string& ended,
                    const MonitorSet* mon, long long steps,
                    long long records) {
    njson m;
    m["format"] = "anse-run-manifest";
    m["format_version"] = 1;
    m["code_version"] = kCodeVersion;
    m["status"] = status;
    m["started_utc"] = started;
    m["ended_utc"] = ended;
    njson seeds;
    seeds["initial"] = cfg.initial.seed;
    seeds["audit"] = cfg.audit.seed;
    m["seeds"] = std::move(seeds);
    m["steps"] = steps;
    m["records"] = records;
    m["cfl_violations"] = mon ? mon->cfl_violations : 0;
    njson fails = njson::array();
    if (mon)
        for (const std::string& f : mon->failures) fails.push_back(f);
    m["failures"] = std::move(fails);
    m["config"] = njson::parse(emit_config(cfg));
    return m;
}

std::string snapshot_path(const std::string& dir, long long step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%08lld.bin", step);
    return dir + "/" + buf;
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out += static_cast<char>((v >> (8 * i)) & 0xff);
}

void put_f64(std::string& out, double d) {
    const std::uint64_t v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i)
        out += static_cast<char>((v >> (8 * i)) & 0xff);
}

std::uint32_t read_u32(const std::string& bytes, std::size_t& pos) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(
                 static_cast<unsigned char>(bytes[pos + i]))
             << (8 * i);
    pos += 4;
    return v;
}

double read_f64(const std::string& bytes, std::size_t& pos) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(
                 static_cast<unsigned char>(bytes[pos + i]))
             << (8 * i);
    pos += 8;
    return std::bit_cast<double>(v);
}

AuditReport run_one_audit(const std::string& id, const AuditConfig& a) {
    if (id == "triple_product")
        return audit_triple_product(a.n_trials, a.kmax, a.seed);
    if (id == "linfty_l1") return audit_linfty_l1(a.n_trials, a.kmax, a.seed);
    if (id == "poincare_wall")
        return audit_poincare_wall(a.n_trials, a.kmax, a.seed);
    if (id == "poincare_mean")
        return audit_poincare_mean(a.n_trials, a.kmax, a.seed);
    return audit_transport_orthogonality(a.n_trials, a.kmax, a.seed);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = s.find(sep, start);
        if (end == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_config_text(text, path);
}

RunConfig parse_config_text(const std::string& text,
                            const std::string& origin) {
    njson root;
    try {
        root = njson::parse(text);
    } catch (const njson::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    return parse_config_json(root, origin);
}

std::string emit_config(const RunConfig& cfg) {
    njson j;
    j["scenario"] = cfg.scenario;
    njson& g = j["grid"];
    g["nx"] = cfg.grid.nx;
    g["ny"] = cfg.grid.ny;
    g["dealias_num"] = cfg.grid.dealias_num;
    g["dealias_den"] = cfg.grid.dealias_den;
    njson& st = j["stepper"];
    st["dt"] = cfg.stepper.dt;
    st["dt_max"] = cfg.stepper.dt_max;
    st["cfl"] = cfg.stepper.cfl;
    st["t_end"] = cfg.stepper.t_end;
    st["scheme"] = cfg.stepper.scheme;
    njson& in = j["initial"];
    in["amplitude"] = cfg.initial.amplitude;
    in["seed"] = cfg.initial.seed;
    in["kmax"] = cfg.initial.kmax;
    in["shear_slope"] = cfg.initial.shear_slope;
    in["epsilon"] = cfg.initial.epsilon;
    in["psi_modes"] = modes_to_json(cfg.initial.psi_modes);
    in["ubar"] = cfg.initial.ubar;
    njson& fo = j["forcing"];
    fo["amplitude"] = cfg.forcing.amplitude;
    fo["psi_modes"] = modes_to_json(cfg.forcing.psi_modes);
    fo["fbar1"] = cfg.forcing.fbar1;
    fo["envelope"] = cfg.forcing.envelope;
    fo["rate"] = cfg.forcing.rate;
    fo["t_off"] = cfg.forcing.t_off;
    njson& mo = j["monitors"];
    mo["velocity_bound"] = cfg.monitors.velocity_bound;
    mo["dissipation_bound"] = cfg.monitors.dissipation_bound;
    mo["vorticity_bound"] = cfg.monitors.vorticity_bound;
    mo["vorticity_dissipation_bound"] =
        cfg.monitors.vorticity_dissipation_bound;
    mo["identities"] = cfg.monitors.identities;
    mo["energy_decay"] = cfg.monitors.energy_decay;
    mo["margin_rel_tol"] = cfg.monitors.margin_rel_tol;
    mo["identity_rel_tol"] = cfg.monitors.identity_rel_tol;
    njson& ou = j["output"];
    ou["run_dir"] = cfg.output.run_dir;
    ou["snapshot_every"] = cfg.output.snapshot_every;
    ou["diagnostics_every"] = cfg.output.diagnostics_every;
    njson& au = j["audit"];
    au["n_trials"] = cfg.audit.n_trials;
    au["kmax"] = cfg.audit.kmax;
    au["seed"] = cfg.audit.seed;
    au["inequalities"] = cfg.audit.inequalities;
    au["adversarial_iters"] = cfg.audit.adversarial_iters;
    return j.dump(2) + "\n";
}

ScenarioBuild build_scenario(const RunConfig& cfg) {
    const Grid g(cfg.grid.nx, cfg.grid.ny, cfg.grid.dealias_num,
                 cfg.grid.dealias_den);
    ScenarioBuild out{FlowState(g), ForcingSpec(g), MonitorSet{}};
    FlowState& s = out.state;
    const InitialConfig& ic = cfg.initial;

    if (cfg.scenario == "taylor_green" || cfg.scenario == "forced_h2") {
        // psi = A sin(2 pi x) sin(pi y)
        s.psi.coeff(1, 1) = {0.0, -0.5 * ic.amplitude};
        s.psi.coeff(-1, 1) = {0.0, 0.5 * ic.amplitude};
    } else if (cfg.scenario == "pure_shear") {
        s.ubar = linear_shear_cosine(g.ny, ic.shear_slope);
    } else if (cfg.scenario == "free_decay") {
        s.psi = random_band_limited(g, YBasis::SineY, ic.kmax, ic.amplitude,
                                    ic.seed);
        s.clear_psi_mean_row();
        std::mt19937_64 rng(ic.seed + (std::uint64_t{1} << 32));
        const int kcap = std::min({ic.kmax, g.ky_cut(), g.ny - 1});
        for (int k = 0; k <= kcap; ++k)
            s.ubar[static_cast<std::size_t>(k)] =
                ic.amplitude * (uniform01(rng) - 0.5);
    } else if (cfg.scenario == "shear_stability") {
        s.ubar = linear_shear_cosine(g.ny, ic.shear_slope);
        s.psi = random_band_limited(g, YBasis::SineY, ic.kmax, 1.0, ic.seed);
        s.clear_psi_mean_row();
        const double n0 = std::sqrt(sobolev_norms(s).osc_omega2);
        if (n0 == 0.0)
            throw ValidationError(
                "shear_stability: the seeded perturbation is identically zero");
        const double scale = ic.epsilon / n0;
        for (std::size_t i = 0; i < s.psi.size(); ++i) s.psi.data()[i] *= scale;
    } else if (cfg.scenario == "custom") {
        for (const ModeSpec& m : ic.psi_modes) set_mode_pair(s.psi, m, 1.0);
        for (std::size_t k = 0; k < ic.ubar.size(); ++k) s.ubar[k] = ic.ubar[k];
    }
    // taylor_green / pure_shear / free_decay / custom keep whatever forcing
    // the config specifies (zero amplitude by default).

    const ForcingConfig& fc = cfg.forcing;
    if (fc.amplitude != 0.0) {
        for (const ModeSpec& m : fc.psi_modes)
            set_mode_pair(out.forcing.psi_f, m, fc.amplitude);
        for (std::size_t k = 0;
             k < fc.fbar1.size() && k < out.forcing.fbar1.size(); ++k)
            out.forcing.fbar1[k] = fc.amplitude * fc.fbar1[k];
    }
    out.forcing.envelope = make_envelope(fc);

    MonitorSet& m = out.monitors;
    m.velocity_bound = cfg.monitors.velocity_bound;
    m.dissipation_bound = cfg.monitors.dissipation_bound;
    m.vorticity_bound = cfg.monitors.vorticity_bound;
    m.vorticity_dissipation_bound = cfg.monitors.vorticity_dissipation_bound;
    m.identities = cfg.monitors.identities;
    m.energy_decay = cfg.monitors.energy_decay;
    m.margin_rel_tol = cfg.monitors.margin_rel_tol;
    m.identity_rel_tol = cfg.monitors.identity_rel_tol;
    return out;
}

std::string resolve_run_dir(const RunConfig& cfg) {
    std::string dir = cfg.output.run_dir.empty() ? "runs/" + cfg.scenario
                                                 : cfg.output.run_dir;
    const char* env = std::getenv("ANSE_RUN_DIR");
    if (env != nullptr && *env != '\0' &&
        std::filesystem::path(dir).is_relative())
        dir = (std::filesystem::path(env) / dir).string();
    return dir;
}

std::string diagnostics_csv_header() {
    return "t,energy,enstrophy,u_l2,ux_l2,uy_l2,v_l2,vx_l2,omega_l2,"
           "grad_omega_l2,h2_norm,osc_vorticity_l2,mean_profile_l2,"
           "energy_residual,enstrophy_residual,e1_margin,e2_margin,"
           "v2_margin,v20_margin,twin_distance";
}

std::string diagnostics_csv_row(const DiagnosticsRecord& rec) {
    std::string row;
    row.reserve(320);
    auto add = [&row](double v) {
        row += shortest_double(v);
        row += ',';
    };
    add(rec.t);
    add(rec.energy);
    add(rec.enstrophy);
    add(rec.norms.u_l2());
    add(rec.norms.ux_l2());
    add(rec.norms.uy_l2());
    add(rec.norms.v_l2());
    add(rec.norms.vx_l2());
    add(rec.norms.omega_l2());
    add(rec.norms.grad_omega_l2());
    add(rec.h2_norm());
    add(rec.osc_vorticity_l2());
    add(rec.mean_profile_l2());
    add(rec.energy_residual);
    add(rec.enstrophy_residual);
    add(rec.velocity_margin);
    add(rec.dissipation_margin);
    add(rec.vorticity_margin);
    add(rec.vorticity_dissipation_margin);
    if (rec.twin_distance) row += shortest_double(*rec.twin_distance);
    return row;
}

void write_snapshot(const std::string& path, const FlowState& s) {
    const int nx = s.grid.nx;
    const int ny = s.grid.ny;
    std::string bytes;
    bytes.reserve(24 +
                  static_cast<std::size_t>(nx / 2 + 1) * (ny - 1) * 16 +
                  static_cast<std::size_t>(ny + 1) * 8);
    bytes.append("ANSE", 4);
    put_u32(bytes, 1u);
    put_u32(bytes, static_cast<std::uint32_t>(nx));
    put_u32(bytes, static_cast<std::uint32_t>(ny));
    put_f64(bytes, s.time);
    for (int k1 = 0; k1 <= nx / 2; ++k1)
        for (int k2 = 1; k2 <= ny - 1; ++k2) {
            const std::complex<double> z = s.psi.coeff(k1, k2);
            put_f64(bytes, z.real());
            put_f64(bytes, z.imag());
        }
    for (int k = 0; k <= ny; ++k)
        put_f64(bytes, s.ubar[static_cast<std::size_t>(k)]);
    write_file_or_throw(path, bytes);
}

FlowState read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingArtifact("cannot open snapshot: " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    if (bytes.size() < 24 || std::memcmp(bytes.data(), "ANSE", 4) != 0)
        throw ParseError("not a flow snapshot (bad magic): " + path);
    std::size_t pos = 4;
    const std::uint32_t version = read_u32(bytes, pos);
    if (version != 1)
        throw ParseError("unsupported snapshot version " +
                         std::to_string(version) + ": " + path);
    const std::uint32_t unx = read_u32(bytes, pos);
    const std::uint32_t uny = read_u32(bytes, pos);
    if (unx < 4 || unx % 2 != 0 || uny < 2 || unx > (1u << 20) ||
        uny > (1u << 20))
        throw ParseError("snapshot header has an invalid grid: " + path);
    const int nx = static_cast<int>(unx);
    const int ny = static_cast<int>(uny);
    const std::size_t expected =
        24 + static_cast<std::size_t>(nx / 2 + 1) * (ny - 1) * 16 +
        static_cast<std::size_t>(ny + 1) * 8;
    if (bytes.size() != expected)
        throw ParseError("snapshot truncated or oversized: " + path);
    const double time = read_f64(bytes, pos);

    FlowState s{Grid(nx, ny)};
    s.time = time;
    for (int k1 = 0; k1 <= nx / 2; ++k1)
        for (int k2 = 1; k2 <= ny - 1; ++k2) {
            const double re = read_f64(bytes, pos);
            const double im = read_f64(bytes, pos);
            s.psi.coeff(k1, k2) = {re, im};
            if (k1 >= 1 && k1 < nx / 2)
                s.psi.coeff(-k1, k2) = {re, -im};
        }
    for (int k = 0; k <= ny; ++k)
        s.ubar[static_cast<std::size_t>(k)] = read_f64(bytes, pos);
    return s;
}

int run_command(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    const std::string dir = resolve_run_dir(cfg);
    try {
        fs::create_directories(dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "anse run: cannot create run directory %s: %s\n",
                     dir.c_str(), e.what());
        return 4;
    }

    const ScenarioBuild sb = build_scenario(cfg);
    const std::string started = utc_now();
    MonitorSet monitors = sb.monitors;
    long long steps = 0;
    long long records = 0;

    try {
        write_file_or_throw(
            dir + "/manifest.json",
            manifest_json(cfg, "running", started, "", nullptr, 0, 0).dump(2) +
                "\n");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "anse run: %s\n", e.what());
        return 4;
    }

    std::ofstream csv(dir + "/diagnostics.csv",
                      std::ios::binary | std::ios::trunc);
    csv << diagnostics_csv_header() << '\n';
    if (!csv) {
        std::fprintf(stderr, "anse run: cannot write %s/diagnostics.csv\n",
                     dir.c_str());
        return 4;
    }

    StepperConfig scfg;
    scfg.dt = cfg.stepper.dt;
    scfg.dt_max = cfg.stepper.dt_max;
    scfg.cfl = cfg.stepper.cfl;
    scfg.t_end = cfg.stepper.t_end;
    scfg.scheme = cfg.stepper.scheme;
    scfg.snapshot_every = cfg.output.snapshot_every;
    scfg.diagnostics_every = cfg.output.diagnostics_every;

    int exit_code = 0;
    std::string status = "completed";
    try {
        const IntegrationResult res = integrate(
            sb.state, sb.forcing, scfg, monitors,
            [&csv, &records](const DiagnosticsRecord& r) {
                csv << diagnostics_csv_row(r) << '\n';
                ++records;
            },
            [&dir](const FlowState& st, long long step) {
                write_snapshot(snapshot_path(dir, step), st);
            });
        monitors = res.monitors;
        steps = res.steps;
        if (!monitors.failures.empty()) {
            status = "monitor_failure";
            exit_code = 2;
        }
    } catch (const NonFinite& e) {
        monitors.failures.push_back(std::string("nonfinite: ") + e.what());
        status = "nonfinite_abort";
        exit_code = 3;
    } catch (const std::exception& e) {  // snapshot/CSV I/O failures
        std::fprintf(stderr, "anse run: %s\n", e.what());
        status = "io_error";
        exit_code = 4;
    }

    csv.flush();
    if (!csv && exit_code == 0) {
        std::fprintf(stderr, "anse run: cannot write %s/diagnostics.csv\n",
                     dir.c_str());
        status = "io_error";
        exit_code = 4;
    }
    csv.close();

    try {
        write_file_or_throw(dir + "/manifest.json",
                            manifest_json(cfg, status, started, utc_now(),
                                          &monitors, steps, records)
                                    .dump(2) +
                                "\n");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "anse run: %s\n", e.what());
        return 4;
    }
    return exit_code;
}

int audit_command(const RunConfig& cfg, std::string* table_out) {
    std::vector<AuditReport> reports;
    for (const std::string& id : cfg.audit.inequalities) {
        reports.push_back(run_one_audit(id, cfg.audit));
        if (cfg.audit.adversarial_iters > 0)
            reports.push_back(adversarial_ratio_search(
                id, cfg.audit.kmax, cfg.audit.adversarial_iters,
                cfg.audit.seed));
    }
    const std::string table = format_audit_table(reports);
    const std::string csv = format_audit_csv(reports);
    if (table_out) *table_out = table;

    const std::string dir = resolve_run_dir(cfg);
    try {
        std::filesystem::create_directories(dir);
        write_file_or_throw(dir + "/audit.csv", csv);
        write_file_or_throw(dir + "/audit.txt", table);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "anse audit: %s\n", e.what());
        return 4;
    }

    for (const AuditReport& r : reports)
        if (r.violations != 0) return 2;
    return 0;
}

namespace {

/// diagnostics.csv loaded back as named numeric columns; the twin column may
/// hold NaN for empty cells.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int col(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        return -1;
    }
};

CsvTable load_diagnostics_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingArtifact("cannot open " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    t.columns = split_on(line, ',');
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_on(line, ',');
        if (cells.size() != t.columns.size())
            throw ParseError(path + ": row with " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(t.columns.size()));
        std::vector<double> row(cells.size(),
                                std::numeric_limits<double>::quiet_NaN());
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (!cells[i].empty()) row[i] = std::stod(cells[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

double column_min(const CsvTable& t, int col) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& row : t.rows)
        lo = std::min(lo, row[static_cast<std::size_t>(col)]);
    return lo;
}

std::string fit_line(const CsvTable& t, int tcol, int vcol) {
    std::vector<std::pair<double, double>> series;
    series.reserve(t.rows.size());
    for (const auto& row : t.rows)
        series.emplace_back(row[static_cast<std::size_t>(tcol)],
                            row[static_cast<std::size_t>(vcol)]);
    try {
        const DecayFit fit = fit_exponential_decay(series);
        return "rate " + fmt_g(fit.rate) + "   r^2 " + fmt_g(fit.r_squared) +
               "   (n " + std::to_string(fit.n_used) + ")";
    } catch (const DegenerateSeries& e) {
        return std::string("unavailable (") + e.what() + ")";
    }
}

}  // namespace

std::string report_command(const std::string& run_dir) {
    namespace fs = std::filesystem;
    const std::string manifest_path = run_dir + "/manifest.json";
    const std::string csv_path = run_dir + "/diagnostics.csv";
    if (!fs::exists(manifest_path))
        throw MissingArtifact("no manifest.json in " + run_dir);
    if (!fs::exists(csv_path))
        throw MissingArtifact("no diagnostics.csv in " + run_dir);

    njson man;
    try {
        std::ifstream in(manifest_path, std::ios::binary);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        man = njson::parse(text);
    } catch (const njson::exception& e) {
        throw ParseError(manifest_path + ": " + e.what());
    }
    const CsvTable t = load_diagnostics_csv(csv_path);
    if (t.rows.empty()) throw ParseError(csv_path + ": no data rows");

    const std::string scenario =
        man.contains("config") && man["config"].contains("scenario")
            ? man["config"]["scenario"].get<std::string>()
            : "?";
    const std::string status =
        man.contains("status") ? man["status"].get<std::string>() : "?";
    const long long steps = man.value("steps", 0ll);
    const long long cfl_violations = man.value("cfl_violations", 0ll);
    std::vector<std::string> failures;
    if (man.contains("failures"))
        for (const auto& f : man["failures"])
            failures.push_back(f.get<std::string>());

    const njson mon_cfg = man.contains("config") &&
                                  man["config"].contains("monitors")
                              ? man["config"]["monitors"]
                              : njson::object();
    auto monitor_enabled = [&mon_cfg](const char* key) {
        return mon_cfg.value(key, true);
    };
    auto monitor_failed = [&failures](const std::string& prefix) {
        for (const std::string& f : failures)
            if (f.rfind(prefix, 0) == 0) return true;
        return false;
    };

    const int tcol = t.col("t");
    if (tcol < 0) throw ParseError(csv_path + ": missing t column");
    const double t0 = t.rows.front()[static_cast<std::size_t>(tcol)];
    const double t1 = t.rows.back()[static_cast<std::size_t>(tcol)];

    std::ostringstream os;
    os << "run report: " << run_dir << "\n";
    os << "scenario: " << scenario << "   status: " << status << "\n";
    os << "steps: " << steps << "   records: " << t.rows.size() << "   t: "
       << fmt_g(t0) << " -> " << fmt_g(t1) << "\n";

    os << "monitors:\n";
    const std::array<std::array<const char*, 3>, 4> margin_monitors = {{
        {"velocity_bound", "velocity_bound", "e1_margin"},
        {"dissipation_bound", "dissipation_bound", "e2_margin"},
        {"vorticity_bound", "vorticity_bound", "v2_margin"},
        {"vorticity_dissipation_bound", "vorticity_dissipation_bound",
         "v20_margin"},
    }};
    for (const auto& [key, prefix, column] : margin_monitors) {
        os << "  " << key << ": ";
        if (!monitor_enabled(key)) {
            os << "off\n";
            continue;
        }
        os << (monitor_failed(prefix) ? "FAIL" : "pass");
        const int c = t.col(column);
        if (c >= 0) os << "   min margin " << fmt_g(column_min(t, c));
        os << "\n";
    }
    os << "  identities: "
       << (!monitor_enabled("identities")
               ? "off"
               : (monitor_failed("identity_") ? "FAIL" : "pass"))
       << "\n";
    os << "  energy_decay: "
       << (!monitor_enabled("energy_decay")
               ? "off"
               : (monitor_failed("energy_decay") ? "FAIL" : "pass"))
       << "\n";
    os << "  cfl_violations: " << cfl_violations << "\n";
    if (failures.empty()) {
        os << "failures: none\n";
    } else {
        os << "failures:\n";
        for (const std::string& f : failures) os << "  " << f << "\n";
    }

    os << "decay fits (value ~ A exp(-rate t)):\n";
    const int ecol = t.col("energy");
    const int ocol = t.col("osc_vorticity_l2");
    if (ecol >= 0) os << "  energy: " << fit_line(t, tcol, ecol) << "\n";
    if (ocol >= 0)
        os << "  osc_vorticity_l2: " << fit_line(t, tcol, ocol) << "\n";
    if (scenario == "taylor_green")
        os << "  taylor_green reference: oscillation vorticity decays at rate "
              "4 pi^2 = "
           << fmt_g(4.0 * kPi * kPi) << "\n";

    os << "final state (t = " << fmt_g(t1) << "):\n";
    const std::array<const char*, 6> final_cols = {
        "u_l2", "v_l2", "omega_l2", "h2_norm", "osc_vorticity_l2",
        "mean_profile_l2"};
    for (const char* name : final_cols) {
        const int c = t.col(name);
        if (c >= 0)
            os << "  " << name << " "
               << fmt_g(t.rows.back()[static_cast<std::size_t>(c)]) << "\n";
    }
    return os.str();
}

int sweep_command(const std::string& config_path,
                  const std::vector<std::string>& param_specs) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw ParseError("cannot read config file: " + config_path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    njson base;
    try {
        base = njson::parse(text);
    } catch (const njson::exception& e) {
        throw ParseError(config_path + ": " + e.what());
    }

    struct Axis {
        std::string key;
        std::vector<std::string> path;
        std::vector<std::string> tokens;
        std::vector<njson> values;
    };
    std::vector<Axis> axes;
    for (const std::string& spec : param_specs) {
        const std::size_t eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size())
            throw ValidationError(
                "sweep parameter must look like dotted.key=v1,v2,... (got \"" +
                spec + "\")");
        Axis ax;
        ax.key = spec.substr(0, eq);
        ax.path = split_on(ax.key, '.');
        ax.tokens = split_on(spec.substr(eq + 1), ',');
        for (const std::string& tok : ax.tokens) {
            njson v;
            try {
                v = njson::parse(tok);
                if (v.is_object() || v.is_array()) v = njson(tok);
            } catch (const njson::exception&) {
                v = njson(tok);  // bare words are strings
            }
            ax.values.push_back(std::move(v));
        }
        axes.push_back(std::move(ax));
    }
    if (axes.empty())
        throw ValidationError("sweep needs at least one --param override");

    auto sanitize = [](const std::string& s) {
        std::string out = s;
        for (char& c : out)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
                  c == '_' || c == '=' || c == '+' || c == '-'))
                c = '_';
        return out;
    };

    int worst = 0;
    long long n_runs = 0;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        std::string label;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            if (!label.empty()) label += "_";
            label += axes[a].key + "=" + axes[a].tokens[idx[a]];
        }

        int code = 0;
        try {
            njson doc = base;
            for (std::size_t a = 0; a < axes.size(); ++a) {
                njson* cur = &doc;
                for (std::size_t d = 0; d + 1 < axes[a].path.size(); ++d) {
                    njson& next = (*cur)[axes[a].path[d]];
                    if (!next.is_object()) next = njson::object();
                    cur = &next;
                }
                (*cur)[axes[a].path.back()] = axes[a].values[idx[a]];
            }
            RunConfig cfg = parse_config_json(
                doc, config_path + " [" + label + "]");
            const std::string base_dir = cfg.output.run_dir.empty()
                                             ? "runs/" + cfg.scenario
                                             : cfg.output.run_dir;
            cfg.output.run_dir = base_dir + "/" + sanitize(label);
            code = run_command(cfg);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "anse sweep: %s\n", e.what());
            code = 4;
        }
        std::printf("sweep: %s -> exit %d\n", label.c_str(), code);
        worst = std::max(worst, code);
        ++n_runs;

        std::size_t d = axes.size();
        while (d > 0) {
            if (++idx[d - 1] < axes[d - 1].values.size()) break;
            idx[d - 1] = 0;
            --d;
        }
        if (d == 0) break;
    }
    std::printf("sweep: %lld run%s, worst exit %d\n", n_runs,
                n_runs == 1 ? "" : "s", worst);
    return worst;
}

}  // namespace anse
