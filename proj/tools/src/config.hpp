// Run configuration: one JSON document per experiment, validated in full
// (every problem reported with its key path, not just the first), plus a
// content hash that is stamped into every emitted report so results can be
// traced back to the exact configuration that produced them.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlfront/analysis.hpp"
#include "nlfront/envelopes.hpp"
#include "nlfront/kernels.hpp"
#include "nlfront/model.hpp"
#include "nlfront/semiwave.hpp"
#include "nlfront/simulator.hpp"
#include "nlfront/subeig.hpp"

namespace nlfront::cli {

struct RunConfig {
    model::ModelParams params;
    model::GFunction G = model::GFunction::monod(2.0);
    std::optional<kernels::Kernel> J1, K, J2;  // built during load

    sim::SimConfig sim;
    sim::InitProfile init;

    // rate-fit window; zeros mean "derive from the horizon as [T/2, T]"
    double rates_t_lo = 0.0;
    double rates_t_hi = 0.0;
    analysis::Thresholds thresholds;

    semiwave::SemiWaveConfig semiwave;

    subeig::ProfileSpec subeig;
    double subeig_epsilon = 0.1;
    std::vector<double> subeig_L_grid{1, 2, 5, 10, 20, 50, 100};
    std::size_t subeig_grid_n = 4096;
    std::string subeig_kernel = "J1";  // which kernel the profile is checked against
    bool subeig_has_L = false;         // config pinned L explicitly (skip the L search)

    envelopes::EnvelopeSpec envelope;
    bool envelope_search = false;
    envelopes::SearchOptions search_options;

    std::string out_dir = "out";
    std::string prefix = "run";
    bool plot = false;
    std::size_t snapshot_every = 0;  // mirrored into sim.snapshot_every

    std::string hash;     // FNV-1a of the canonical serialization
    nlohmann::json raw;   // the parsed document, for patching (sweep)
};

// FNV-1a 64 over the canonical (sorted-key, minimal-whitespace) dump.
std::string config_hash(const nlohmann::json& j);
std::string bytes_hash(const std::string& bytes);

// Throws ValidationError carrying every violated precondition.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

}  // namespace nlfront::cli
