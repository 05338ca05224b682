#include "rlnc/pip/sizes.hpp"

#include <cmath>
#include <stdexcept>

namespace rlnc::pip {

std::size_t ceil_log2(std::size_t d) {
    if (d == 0) throw std::invalid_argument("ceil_log2: d must be >= 1");
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < d) ++bits;
    return bits;
}

std::size_t token_size_bits(Protocol protocol, std::size_t d, std::size_t sigma_bits, std::size_t sig_bits,
                            std::size_t hash_bits) {
    if (d == 0) throw std::invalid_argument("token_size_bits: d must be >= 1");
    switch (protocol) {
        case Protocol::Pip: return d * (sigma_bits + sig_bits) + sig_bits;
        case Protocol::LogPip: return hash_bits + sigma_bits + sig_bits + 2 * sigma_bits * ceil_log2(d);
        case Protocol::None: return 0;
    }
    return 0;
}

double token_size_bits_ideal(Protocol protocol, std::size_t d, std::size_t sigma_bits, std::size_t sig_bits,
                             std::size_t hash_bits) {
    if (protocol != Protocol::LogPip) return static_cast<double>(token_size_bits(protocol, d, sigma_bits, sig_bits, hash_bits));
    return static_cast<double>(hash_bits + sigma_bits + sig_bits) +
           2.0 * static_cast<double>(sigma_bits) * std::log2(static_cast<double>(d));
}

std::size_t pip_framing_bytes(const PipTestToken& token, const Widths& widths) {
    std::size_t bytes = 2;
    for (const auto& e : token.entries) bytes += 1 + e.parent_id.size() + widths.alpha;
    return bytes;
}

std::size_t proof_framing_bytes(const Widths& widths) { return 4 + widths.alpha; }

}  // namespace rlnc::pip
