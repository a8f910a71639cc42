// Compares the serial reference implementation against the OpenMP-parallel
// kernels on the two embarrassingly parallel workloads: a Conley-Zehnder
// index sweep over periods and a batch of gradient-flow integrations.

#include <chrono>
#include <cstdio>
#include <vector>

#include "rfh/brieskorn.hpp"
#include "rfh/cz_index.hpp"
#include "rfh/morse_flow.hpp"
#include "rfh/parallel.hpp"

using Clock = std::chrono::steady_clock;

static double seconds(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int main() {
    std::printf("threads available: %d\n", rfh::hardware_threads());

    // CZ index sweep over the spectrum of (2,3,7,7).
    rfh::brieskorn::BrieskornTuple a({2, 3, 7, 7});
    auto spec = rfh::brieskorn::spectrum(a, 40);
    std::vector<long long> serial_mu(spec.size()), parallel_mu(spec.size());
    auto run_sweep = [&](rfh::ExecPolicy policy, std::vector<long long>& out) {
        rfh::parallel_for(
            spec.size(),
            [&](std::size_t i) { out[i] = rfh::brieskorn::mu_cz_oracle(a, spec[i]); },
            policy);
    };
    auto t0 = Clock::now();
    run_sweep(rfh::ExecPolicy::serial, serial_mu);
    auto t1 = Clock::now();
    run_sweep(rfh::ExecPolicy::parallel, parallel_mu);
    auto t2 = Clock::now();
    bool sweep_match = serial_mu == parallel_mu;
    std::printf("cz sweep (%zu periods): serial %.3fs, parallel %.3fs, match=%s\n",
                spec.size(), seconds(t0, t1), seconds(t1, t2),
                sweep_match ? "yes" : "NO");

    // Batch gradient-flow integration on S^3.
    auto setup = rfh::morse::s3_setup(2.0);
    auto starts = rfh::morse::random_s3_points(24, 7);
    auto t3 = Clock::now();
    auto serial_trajs =
        rfh::morse::integrate_batch(setup, starts, 1e-3, 400, rfh::ExecPolicy::serial);
    auto t4 = Clock::now();
    auto parallel_trajs =
        rfh::morse::integrate_batch(setup, starts, 1e-3, 400, rfh::ExecPolicy::parallel);
    auto t5 = Clock::now();
    bool flow_match = true;
    for (std::size_t i = 0; i < starts.size(); ++i)
        if (serial_trajs[i].limit_id != parallel_trajs[i].limit_id ||
            serial_trajs[i].limit != parallel_trajs[i].limit)
            flow_match = false;
    std::printf("flow batch (%zu starts): serial %.3fs, parallel %.3fs, match=%s\n",
                starts.size(), seconds(t3, t4), seconds(t4, t5),
                flow_match ? "yes" : "NO");

    return sweep_match && flow_match ? 0 : 1;
}
