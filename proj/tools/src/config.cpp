#include "config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nlfront/errors.hpp"

namespace nlfront::cli {

using nlohmann::json;

std::string bytes_hash(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string config_hash(const json& j) {
    return bytes_hash(j.dump());  // dump() sorts keys and strips whitespace
}

namespace {
const json* block(const json& root, const char* key, std::vector<std::string>& issues) {
    if (!root.contains(key)) return nullptr;
    if (!root.at(key).is_object()) {
        issues.push_back(std::string(key) + ": must be an object");
        return nullptr;
    }
    return &root.at(key);
}

double num(const json* obj, const std::string& path, const char* key, double dflt,
           std::vector<std::string>& issues) {
    if (!obj || !obj->contains(key)) return dflt;
    const json& v = obj->at(key);
    if (!v.is_number()) {
        issues.push_back(path + "." + key + ": must be a number");
        return dflt;
    }
    return v.get<double>();
}

std::size_t count(const json* obj, const std::string& path, const char* key, std::size_t dflt,
                  std::vector<std::string>& issues) {
    if (!obj || !obj->contains(key)) return dflt;
    const json& v = obj->at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        issues.push_back(path + "." + key + ": must be a nonnegative integer");
        return dflt;
    }
    return v.get<std::size_t>();
}

bool flag(const json* obj, const std::string& path, const char* key, bool dflt,
          std::vector<std::string>& issues) {
    if (!obj || !obj->contains(key)) return dflt;
    const json& v = obj->at(key);
    if (!v.is_boolean()) {
        issues.push_back(path + "." + key + ": must be a boolean");
        return dflt;
    }
    return v.get<bool>();
}

std::string text(const json* obj, const std::string& path, const char* key,
                 const std::string& dflt, std::vector<std::string>& issues) {
    if (!obj || !obj->contains(key)) return dflt;
    const json& v = obj->at(key);
    if (!v.is_string()) {
        issues.push_back(path + "." + key + ": must be a string");
        return dflt;
    }
    return v.get<std::string>();
}

std::vector<double> numbers(const json* obj, const std::string& path, const char* key,
                            std::vector<double> dflt, std::vector<std::string>& issues) {
    if (!obj || !obj->contains(key)) return dflt;
    const json& v = obj->at(key);
    if (!v.is_array()) {
        issues.push_back(path + "." + key + ": must be an array of numbers");
        return dflt;
    }
    std::vector<double> out;
    for (const json& e : v) {
        if (!e.is_number()) {
            issues.push_back(path + "." + key + ": must be an array of numbers");
            return dflt;
        }
        out.push_back(e.get<double>());
    }
    return out;
}

kernels::KernelSpec parse_kernel(const json* obj, const std::string& path,
                                 std::vector<std::string>& issues) {
    const std::string fam = text(obj, path, "family", "power_law", issues);
    kernels::KernelSpec spec;
    if (fam == "power_law") {
        spec = kernels::KernelSpec::power(num(obj, path, "alpha", 2.0, issues),
                                          num(obj, path, "s", 1.0, issues));
    } else if (fam == "triangle") {
        spec = kernels::KernelSpec::triangle(num(obj, path, "a", 1.0, issues));
    } else if (fam == "cosine") {
        spec = kernels::KernelSpec::cosine(num(obj, path, "a", 1.0, issues));
    } else if (fam == "gaussian") {
        spec = kernels::KernelSpec::gauss(num(obj, path, "sigma", 1.0, issues));
    } else if (fam == "laplace") {
        spec = kernels::KernelSpec::laplacian(num(obj, path, "b", 1.0, issues));
    } else if (fam == "sampled") {
        spec = kernels::KernelSpec::sampled(num(obj, path, "xmax", 1.0, issues),
                                            numbers(obj, path, "values", {}, issues));
    } else {
        issues.push_back(path + ".family: unknown kernel family '" + fam + "'");
        return spec;
    }
    for (const std::string& m : spec.validate()) issues.push_back(path + ": " + m);
    return spec;
}
}  // namespace

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config: top level must be an object");
    std::vector<std::string> issues;
    RunConfig cfg;
    cfg.raw = j;
    cfg.hash = config_hash(j);

    const json* m = block(j, "model", issues);
    cfg.params.d1 = num(m, "model", "d1", cfg.params.d1, issues);
    cfg.params.d2 = num(m, "model", "d2", cfg.params.d2, issues);
    cfg.params.a11 = num(m, "model", "a11", cfg.params.a11, issues);
    cfg.params.a12 = num(m, "model", "a12", cfg.params.a12, issues);
    cfg.params.a22 = num(m, "model", "a22", cfg.params.a22, issues);
    cfg.params.mu = num(m, "model", "mu", cfg.params.mu, issues);
    cfg.params.rho_flux = num(m, "model", "rho_flux", cfg.params.rho_flux, issues);
    cfg.params.h0 = num(m, "model", "h0", cfg.params.h0, issues);
    for (const std::string& msg : cfg.params.validate()) issues.push_back("model: " + msg);

    const json* g = block(j, "G", issues);
    const std::string gfam = text(g, "G", "family", "monod", issues);
    if (gfam == "monod") {
        const double b = num(g, "G", "b", 2.0, issues);
        if (b > 0.0) cfg.G = model::GFunction::monod(b);
        else issues.push_back("G.b: must be positive");
    } else if (gfam == "linear_capped") {
        const double b = num(g, "G", "b", 1.0, issues);
        const double cap = num(g, "G", "cap", 1.0, issues);
        if (b > 0.0 && cap > 0.0) cfg.G = model::GFunction::linear_capped(b, cap);
        else issues.push_back("G: slope and cap must be positive");
    } else {
        issues.push_back("G.family: unknown response family '" + gfam + "'");
    }
    if (issues.empty())
        for (const std::string& msg : cfg.G.check_certificates(cfg.params))
            issues.push_back("G: " + msg);

    const json* ks = block(j, "kernels", issues);
    kernels::KernelSpec sj1, sk, sj2;
    if (ks) {
        sj1 = parse_kernel(block(*ks, "J1", issues), "kernels.J1", issues);
        sk = parse_kernel(block(*ks, "K", issues), "kernels.K", issues);
        sj2 = parse_kernel(block(*ks, "J2", issues), "kernels.J2", issues);
    } else {
        issues.push_back("kernels: block is required (J1, K, J2)");
    }

    const json* s = block(j, "sim", issues);
    cfg.sim.dx = num(s, "sim", "dx", cfg.sim.dx, issues);
    cfg.sim.dt = num(s, "sim", "dt", cfg.sim.dt, issues);
    cfg.sim.T = num(s, "sim", "T", cfg.sim.T, issues);
    cfg.sim.snapshot_every = count(s, "sim", "snapshot_every", cfg.sim.snapshot_every, issues);
    cfg.sim.vanish_threshold =
        num(s, "sim", "vanish_threshold", cfg.sim.vanish_threshold, issues);
    cfg.sim.spread_threshold =
        num(s, "sim", "spread_threshold", cfg.sim.spread_threshold, issues);
    cfg.sim.stop_on_spread = flag(s, "sim", "stop_on_spread", cfg.sim.stop_on_spread, issues);
    cfg.sim.spread_center_tol =
        num(s, "sim", "spread_center_tol", cfg.sim.spread_center_tol, issues);
    const std::string backend = text(s, "sim", "backend", "auto", issues);
    try {
        cfg.sim.backend = conv::backend_from_name(backend);
    } catch (const ValidationError&) {
        issues.push_back("sim.backend: unknown backend '" + backend + "'");
    }
    cfg.snapshot_every = cfg.sim.snapshot_every;
    for (const std::string& msg : cfg.sim.validate(cfg.params)) issues.push_back(msg);

    const json* init = block(j, "init", issues);
    cfg.init.A = num(init, "init", "A", cfg.init.A, issues);
    cfg.init.B = num(init, "init", "B", cfg.init.B, issues);

    const json* an = block(j, "analysis", issues);
    cfg.rates_t_lo = num(an, "analysis", "t_lo", 0.0, issues);
    cfg.rates_t_hi = num(an, "analysis", "t_hi", 0.0, issues);
    cfg.thresholds.spread_width =
        num(an, "analysis", "spread_width", cfg.thresholds.spread_width, issues);
    cfg.thresholds.vanish_field =
        num(an, "analysis", "vanish_field", cfg.thresholds.vanish_field, issues);
    cfg.thresholds.center_tol =
        num(an, "analysis", "center_tol", cfg.thresholds.center_tol, issues);

    const json* sw = block(j, "semiwave", issues);
    cfg.semiwave.L_trunc = num(sw, "semiwave", "L_trunc", cfg.semiwave.L_trunc, issues);
    cfg.semiwave.n = count(sw, "semiwave", "n", cfg.semiwave.n, issues);
    cfg.semiwave.fix_tol = num(sw, "semiwave", "fix_tol", cfg.semiwave.fix_tol, issues);
    cfg.semiwave.c_lo = num(sw, "semiwave", "c_lo", cfg.semiwave.c_lo, issues);
    cfg.semiwave.c_hi = num(sw, "semiwave", "c_hi", cfg.semiwave.c_hi, issues);
    cfg.semiwave.max_iter = count(sw, "semiwave", "max_iter", cfg.semiwave.max_iter, issues);

    const json* se = block(j, "subeig", issues);
    if (se) {
        const std::string fam = text(se, "subeig", "family", "power", issues);
        try {
            cfg.subeig.family = subeig::family_from_name(fam);
        } catch (const ValidationError&) {
            issues.push_back("subeig.family: unknown profile family '" + fam + "'");
        }
        cfg.subeig.lambda = num(se, "subeig", "lambda", cfg.subeig.lambda, issues);
        cfg.subeig.eta = num(se, "subeig", "eta", cfg.subeig.eta, issues);
        cfg.subeig.eta1 = num(se, "subeig", "eta1", cfg.subeig.eta1, issues);
        cfg.subeig.eta2 = num(se, "subeig", "eta2", cfg.subeig.eta2, issues);
        cfg.subeig.samples = numbers(se, "subeig", "samples", cfg.subeig.samples, issues);
        cfg.subeig_has_L = se->contains("L");
        cfg.subeig.L = num(se, "subeig", "L", cfg.subeig.L, issues);
        cfg.subeig_epsilon = num(se, "subeig", "epsilon", cfg.subeig_epsilon, issues);
        cfg.subeig_L_grid = numbers(se, "subeig", "L_grid", cfg.subeig_L_grid, issues);
        cfg.subeig_grid_n = count(se, "subeig", "grid_n", cfg.subeig_grid_n, issues);
        cfg.subeig_kernel = text(se, "subeig", "kernel", cfg.subeig_kernel, issues);
        if (cfg.subeig_kernel != "J1" && cfg.subeig_kernel != "K" && cfg.subeig_kernel != "J2")
            issues.push_back("subeig.kernel: must be one of J1, K, J2");
        for (const std::string& msg : cfg.subeig.validate()) issues.push_back(msg);
    }

    const json* env = block(j, "envelope", issues);
    if (env) {
        const std::string cname = text(env, "envelope", "case", "upper_power", issues);
        try {
            cfg.envelope.kind = envelopes::case_from_name(cname);
        } catch (const ValidationError& e) {
            issues.push_back(e.what());
        }
        cfg.envelope_search = flag(env, "envelope", "search", false, issues);
        cfg.envelope.alpha = num(env, "envelope", "alpha", cfg.envelope.alpha, issues);
        cfg.envelope.C1 = num(env, "envelope", "C1", cfg.envelope.C1, issues);
        cfg.envelope.C2 = num(env, "envelope", "C2", cfg.envelope.C2, issues);
        cfg.envelope.C3 = num(env, "envelope", "C3", cfg.envelope.C3, issues);
        cfg.envelope.sigma = num(env, "envelope", "sigma", cfg.envelope.sigma, issues);
        cfg.envelope.lambda = num(env, "envelope", "lambda", cfg.envelope.lambda, issues);
        cfg.envelope.beta = num(env, "envelope", "beta", cfg.envelope.beta, issues);
        cfg.envelope.M = num(env, "envelope", "M", cfg.envelope.M, issues);

        const json* grid = block(*env, "grid", issues);
        cfg.search_options.grid.T_check =
            num(grid, "envelope.grid", "T_check", cfg.search_options.grid.T_check, issues);
        cfg.search_options.grid.nt =
            count(grid, "envelope.grid", "nt", cfg.search_options.grid.nt, issues);
        cfg.search_options.grid.nx =
            count(grid, "envelope.grid", "nx", cfg.search_options.grid.nx, issues);
        cfg.search_options.alpha = cfg.envelope.alpha;
        cfg.search_options.h0 = num(env, "envelope", "h0", cfg.params.h0, issues);
        cfg.search_options.M = cfg.envelope.M;
        cfg.search_options.lambda = cfg.envelope.lambda;
        cfg.search_options.beta = cfg.envelope.beta;
    }

    const json* out = block(j, "output", issues);
    cfg.out_dir = text(out, "output", "dir", cfg.out_dir, issues);
    cfg.prefix = text(out, "output", "prefix", cfg.prefix, issues);
    cfg.plot = flag(out, "output", "plot", cfg.plot, issues);

    if (!issues.empty()) throw ValidationError(issues);
    cfg.J1 = kernels::normalize(sj1);
    cfg.K = kernels::normalize(sk);
    cfg.J2 = kernels::normalize(sj2);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ValidationError("config: " + path + ": " + e.what());
    }
    return config_from_json(j);
}

}  // namespace nlfront::cli
