#ifndef PSENSE_PROTOCOL_HPP
#define PSENSE_PROTOCOL_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace psense {

using Rat = boost::rational<long long>;

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);  // "3", "-1/2" or a plain decimal

// Normalized weights: s_a = raw_a / s* with s* = max |raw_a|, so
// max |s_a| = 1 and the original target is recovered as s* * q.
struct WeightSpec {
    std::vector<Rat> raw;
    std::vector<Rat> normalized;
    Rat scale{1};
};

WeightSpec normalize(const std::vector<Rat>& raw);

// One piecewise-constant interval of the activation profile.
struct Segment {
    Rat duration{0};
    std::vector<std::pair<int, int>> active;  // (chain id, sign)
};

// A measurement step between sequential dwell intervals.
struct HoleMoveStep {
    std::string kind;  // "star" or "edge_z"
    int cell = -1;     // vertex or edge id
};

struct Schedule {
    enum class Mode { parallel, sequential };
    Mode mode = Mode::parallel;
    Rat t{0};          // effective logical time
    Rat dwell{0};      // actual dwell time T
    std::vector<Segment> segments;
    // sequential mode: measurement steps executed before each segment
    std::vector<std::vector<HoleMoveStep>> hole_moves;

    // Signed time integral per chain; equals t * s_a exactly for compiled
    // schedules.
    std::vector<Rat> chain_integrals(std::size_t n_chains) const;
};

// Duty-cycled parallel loading: every chain active through the whole
// window, sign flipped at its own breakpoint; T = t.
Schedule compile_parallel(const WeightSpec& w, const Rat& t);

// One dwell segment per chain with tau_a = t*|s_a|, sigma_a = sign(s_a);
// T = t * sum |s_a|. Zero-weight chains are omitted.
Schedule compile_sequential(const WeightSpec& w, const Rat& t);

// p+- = (1 +- cos(q t)) / 2.
std::pair<double, double> ramsey_probabilities(double q, double t);

struct RamseyResult {
    double q_true = 0, t = 0;
    long long nu = 0;   // shots per batch estimate
    int batches = 0;
    std::uint64_t seed = 0;
    std::vector<double> estimates;      // per-batch maximum-likelihood inversions
    double mean_estimate = 0;
    std::optional<double> variance;     // variance of the pooled estimator; absent for one batch
    double fisher = 0;                  // t^2
    bool fringe_warning = false;        // q t outside the invertible window
};

// Draws nu Bernoulli outcomes per batch from p+(q_true, t) and inverts the
// fringe on (0, pi). Batch seeds derive from `seed` by index so shards
// merge deterministically.
RamseyResult simulate(double q_true, double t, long long nu, std::uint64_t seed,
                      int batches = 1);

// Classical Fisher information of the binary Ramsey outcome; analytic t^2.
double fisher(double q, double t);

}  // namespace psense

#endif
