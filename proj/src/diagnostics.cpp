#include "abcmc/diagnostics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "abcmc/errors.hpp"

namespace abcmc {

double mean(std::span<const double> values) {
    if (values.empty()) throw InsufficientDataError("mean of an empty sequence");
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc / static_cast<double>(values.size());
}

double iid_variance(std::span<const double> values) {
    if (values.size() < 2)
        throw InsufficientDataError("sample variance needs at least 2 values");
    const double mu = mean(values);
    double acc = 0.0;
    for (double v : values) acc += (v - mu) * (v - mu);
    return acc / static_cast<double>(values.size() - 1);
}

VarianceEstimate asymptotic_variance(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 100)
        throw InsufficientDataError("batch means needs at least 100 values, got " +
                                    std::to_string(n));
    const auto b = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    const std::size_t a = n / b;
    const std::size_t used = a * b;
    const auto rest = values.subspan(n - used);

    std::vector<double> batch_means(a);
    for (std::size_t k = 0; k < a; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < b; ++i) acc += rest[k * b + i];
        batch_means[k] = acc / static_cast<double>(b);
    }
    // Centre on the first batch so identical batches give exactly zero.
    const double shift = batch_means.front();
    for (double& m : batch_means) m -= shift;
    const double v = static_cast<double>(b) * iid_variance(batch_means);

    VarianceEstimate est;
    est.value = v;
    est.n_used = used;
    est.batch_size = b;
    est.n_batches = a;
    est.standard_error_of_mean = std::sqrt(v / static_cast<double>(used));
    return est;
}

double acceptance_rate(const Trace& trace) {
    std::size_t tried = 0, taken = 0;
    for (std::size_t i = 0; i < trace.accepted.size(); ++i) {
        if (i < trace.held.size() && trace.held[i]) continue;
        ++tried;
        taken += trace.accepted[i];
    }
    if (tried == 0) throw InsufficientDataError("trace has no non-holding iterations");
    return static_cast<double>(taken) / static_cast<double>(tried);
}

std::vector<double> acceptance_indicators(const Trace& trace) {
    std::vector<double> out;
    out.reserve(trace.accepted.size());
    for (std::size_t i = 0; i < trace.accepted.size(); ++i) {
        if (i < trace.held.size() && trace.held[i]) continue;
        out.push_back(trace.accepted[i] ? 1.0 : 0.0);
    }
    return out;
}

}  // namespace abcmc
