#ifndef HETNET_TOPOLOGY_HPP
#define HETNET_TOPOLOGY_HPP

#include <vector>

// Deployment geometry: one macrocell transmitter serving K users, each macro
// user flanked by L closed-access femtocells whose users it interferes with
// and vice versa. Femtocell clusters belonging to different macro users are
// far enough apart that their mutual interference is below noise and not
// modeled (that separation is what the alignment schemes exploit).

namespace hetnet {

struct Topology {
    int K = 2;   // macro users
    int L = 1;   // femtocells per macro user
    int N = 2;   // transmit antennas everywhere; macro users receive on N
    int M_r = 2; // femto-user receive antennas (blind scheme; N in hybrid)

    double path_loss_exponent = 3.0;

    // Distances in km. Path gain of a link is 1/d^n.
    std::vector<double> macro_user_km;                    // TxA -> a_k
    std::vector<std::vector<double>> femto_user_km;       // Txf_kl -> f_kl
    std::vector<std::vector<double>> macro_to_femto_km;   // TxA -> f_kl
    std::vector<std::vector<double>> femto_to_macro_km;   // Txf_kl -> a_k
    double femto_cross_km = 0.2;                          // Txf_kj -> f_kl

    // Supersymbol lengths. The hybrid scheme groups transmissions into L+1
    // slots, the blind scheme needs K+1.
    int hybrid_slots() const { return L + 1; }
    int blind_slots() const { return K + 1; }

    void validate() const; // throws InvalidParameterError on bad shapes
};

struct PowerConfig {
    double macrocell_watts = 40.0;
    double femtocell_watts = 5.0;
};

// 1/d^n path gain.
double path_gain(double distance_km, double exponent);

// Two macro users at 0.5 km and 4.5 km, one femtocell per user with its user
// at 0.2 km, macro-to-femto reuse distances 5.0 and 5.2 km. Unlisted cross
// links default to the femtocell radius 0.2 km.
Topology example_topology();

// Reference SNR axis: snr_db = 10*log10(P_macro/(N*sigma_n^2)). Returns the
// noise variance realizing a given point on that axis.
double noise_variance_for_snr_db(const PowerConfig& power, const Topology& topo,
                                 double snr_db);

} // namespace hetnet

#endif
