#include "loewner/driving.hpp"

#include <algorithm>
#include <cmath>

namespace loewner {

double DrivingFunction::value_at(double t) const {
    if (times.empty()) return 0.0;
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t i = std::distance(times.begin(), it);
    double w = (t - times[i - 1]) / (times[i] - times[i - 1]);
    return values[i - 1] * (1.0 - w) + values[i] * w;
}

void DrivingFunction::validate(const char* who) const {
    if (times.size() != values.size())
        throw validation_error(std::string(who) + ": times/values length mismatch");
    if (times.size() < 2)
        throw validation_error(std::string(who) + ": needs at least 2 samples");
    if (times[0] != 0.0)
        throw validation_error(std::string(who) + ": grid must start at 0");
    if (values[0] != 0.0)
        throw validation_error(std::string(who) + ": W(0) must be 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1]))
            throw validation_error(std::string(who) + ": times not strictly increasing at index " +
                                   std::to_string(i));
        if (!std::isfinite(values[i]))
            throw validation_error(std::string(who) + ": non-finite value at index " +
                                   std::to_string(i));
    }
}

DrivingFunction DrivingFunction::scaled(double lambda) const {
    DrivingFunction out;
    out.times.reserve(times.size());
    out.values.reserve(values.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        out.times.push_back(lambda * lambda * times[i]);
        out.values.push_back(lambda * values[i]);
    }
    return out;
}

DrivingFunction DrivingFunction::tail_from(std::size_t index) const {
    DrivingFunction out;
    for (std::size_t i = index; i < times.size(); ++i) {
        out.times.push_back(times[i] - times[index]);
        out.values.push_back(values[i] - values[index]);
    }
    return out;
}

DrivingFunction DrivingFunction::restricted(std::size_t index) const {
    DrivingFunction out;
    out.times.assign(times.begin(), times.begin() + index + 1);
    out.values.assign(values.begin(), values.begin() + index + 1);
    return out;
}

double dirichlet_energy(const DrivingFunction& w) {
    w.validate("dirichlet_energy");
    double e = 0.0;
    for (std::size_t i = 1; i < w.times.size(); ++i) {
        double dw = w.values[i] - w.values[i - 1];
        double dt = w.times[i] - w.times[i - 1];
        e += dw * dw / dt;
    }
    return 0.5 * e;
}

}  // namespace loewner
