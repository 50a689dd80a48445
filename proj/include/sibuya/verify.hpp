#ifndef SIBUYA_VERIFY_HPP
#define SIBUYA_VERIFY_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sibuya/integrator.hpp"
#include "sibuya/potential.hpp"
#include "sibuya/types.hpp"

namespace sibuya {

// Pass/fail thresholds; configuration data, not baked into check logic.
struct Thresholds {
    double symmetry = 1e-8;
    double functional = 1e-6;
    double wronskian = 1e-6;
    double order_slope_margin = 0.05;
    double green = 1e-6;
    double green_reconstruct = 1e-5;
};

struct CheckEntry {
    std::string name;
    std::string params;
    double value = 0.0;      // residual or measured quantity
    double threshold = 0.0;  // value <= threshold (or |value| within margin)
    bool pass = false;
};

struct VerificationReport {
    std::vector<CheckEntry> entries;
    std::uint64_t seed = 0;
    std::string config_digest;

    bool all_pass() const;
    std::string to_json(int indent = 2) const;
    void add(std::string name, std::string params, double value,
             double threshold);
};

// conj(C(a)) + C(conj a) = 0 on random complex coefficient vectors.
void check_symmetry(VerificationReport& rep, int m, int n_cases,
                    std::mt19937_64& rng, const RayConfig& cfg,
                    const Thresholds& th = {});

// C f0(a) = omega^{m/2+r_m} f0(rot+1) - omega^{-m/2-r_m} f0(rot-1); p holds
// the head coefficients, each lambda fills the last slot.
void check_functional_relation(VerificationReport& rep, const Potential& p,
                               const std::vector<cplx>& lambdas,
                               const RayConfig& cfg, const Thresholds& th = {});

// Wr(Phi_k, Phi_{k+1}) against the closed form
// 2 (-1)^k omega^{km/2 - r_m(omega_{-k-1}(a))}.
void check_wronskian_lemma(VerificationReport& rep, int m,
                           const std::vector<int>& ks, int n_cases,
                           std::mt19937_64& rng, const RayConfig& cfg,
                           const Thresholds& th = {});

// Growth order of f0: slope of log log-max-modulus vs log r, expected
// 1/2 + 1/m. Returns the fitted slope.
double check_order_growth(VerificationReport& rep, int m,
                          const std::vector<double>& radii,
                          const RayConfig& cfg, const Thresholds& th = {});

// Im(g'/g) < 0 for g(lambda) = omega^{m/2+r_m} f0(omega_1(a), omega^m lambda)
// at real lambda samples; p holds the head coefficients.
void check_logderiv_sign(VerificationReport& rep, const Potential& p,
                         const std::vector<double>& lambdas,
                         const RayConfig& cfg, const Thresholds& th = {});

struct HypothesisResult {
    bool accepted = false;
    int j = 0;            // largest admissible shift when accepted
    int violating_k = 0;  // witness index when rejected
};

// Sign conditions (j-k) a_k >= 0 for k = 1..m-1 with 1 <= j <= m/2, plus
// a_2 <= 0 when m = 4 and j = 2.
HypothesisResult check_hypothesis(const std::vector<double>& a, int m);

// Green's transform: raw identity residual on each ray; for m=3, a=0 the
// zero-of-f0 and zero-of-C moment reconstructions; for m=4 the imaginary-part
// balance at a zero of the rotated f0.
void check_green(VerificationReport& rep, const Potential& p,
                 const std::vector<double>& thetas, const RayConfig& cfg,
                 const Thresholds& th = {});

// Runs the selected checks (empty selection = all) with a seeded sampler.
// Check failures are recorded, never thrown.
VerificationReport run_suite(std::uint64_t seed,
                             const std::vector<std::string>& selection,
                             const RayConfig& cfg, const Thresholds& th = {});

}  // namespace sibuya

#endif
