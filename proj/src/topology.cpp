#include "hetnet/topology.hpp"

#include "hetnet/errors.hpp"

#include <cmath>
#include <string>

namespace hetnet {

double path_gain(double distance_km, double exponent) {
    if (!(distance_km > 0.0))
        throw InvalidParameterError("path_gain: distance must be positive");
    return std::pow(distance_km, -exponent);
}

void Topology::validate() const {
    if (K < 1 || L < 0 || N < 1 || M_r < 1)
        throw InvalidParameterError("topology: K,N,M_r >= 1 and L >= 0");
    auto need = [](std::size_t got, std::size_t want, const char* what) {
        if (got != want)
            throw InvalidParameterError(std::string("topology: ") + what +
                                        " has wrong length");
    };
    need(macro_user_km.size(), static_cast<std::size_t>(K), "macro_user_km");
    need(femto_user_km.size(), static_cast<std::size_t>(K), "femto_user_km");
    need(macro_to_femto_km.size(), static_cast<std::size_t>(K),
         "macro_to_femto_km");
    need(femto_to_macro_km.size(), static_cast<std::size_t>(K),
         "femto_to_macro_km");
    for (int k = 0; k < K; ++k) {
        need(femto_user_km[k].size(), static_cast<std::size_t>(L),
             "femto_user_km[k]");
        need(macro_to_femto_km[k].size(), static_cast<std::size_t>(L),
             "macro_to_femto_km[k]");
        need(femto_to_macro_km[k].size(), static_cast<std::size_t>(L),
             "femto_to_macro_km[k]");
    }
    for (double d : macro_user_km)
        if (!(d > 0.0))
            throw InvalidParameterError("topology: nonpositive distance");
    if (!(femto_cross_km > 0.0))
        throw InvalidParameterError("topology: nonpositive cross distance");
}

Topology example_topology() {
    Topology t;
    t.K = 2;
    t.L = 1;
    t.N = 2;
    t.M_r = 2;
    t.path_loss_exponent = 3.0;
    t.macro_user_km = {0.5, 4.5};
    t.femto_user_km = {{0.2}, {0.2}};
    t.macro_to_femto_km = {{5.0}, {5.2}};
    // The femtocell sits at its macro user's elbow; the interference hop back
    // to that user is on the order of the femtocell radius.
    t.femto_to_macro_km = {{0.2}, {0.2}};
    t.femto_cross_km = 0.2;
    t.validate();
    return t;
}

double noise_variance_for_snr_db(const PowerConfig& power, const Topology& topo,
                                 double snr_db) {
    return power.macrocell_watts /
           (topo.N * std::pow(10.0, snr_db / 10.0));
}

} // namespace hetnet
