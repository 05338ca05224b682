#include "rlnc/validity/scheme.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rlnc::validity {

namespace {

const BigInt& chunk_at(const gf::CodedVector& e, std::size_t i) {
    return i < e.n() ? e.payload[i] : e.coding[i - e.n()];
}

BigInt powm(const BigInt& b, const BigInt& e, const BigInt& p) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
}

void check_dims(const SourceEpochParams& params, const gf::CodedVector& e) {
    if (e.n() != params.n || e.m() != params.m) throw std::invalid_argument("sign_validity: dimension mismatch");
}

BigInt product_range(const std::vector<BigInt>& bases, const gf::CodedVector& e, const BigInt& p) {
    const std::size_t total = bases.size();
    BigInt result = 1;
#pragma omp parallel if (total > 64)
    {
        BigInt local = 1;
#pragma omp for schedule(static) nowait
        for (std::size_t i = 0; i < total; ++i) {
            const BigInt& x = chunk_at(e, i);
            if (sgn(x) == 0) continue;
            local = local * powm(bases[i], x, p) % p;
        }
#pragma omp critical
        result = result * local % p;
    }
    return result;
}

bool chunks_in_range(const gf::CodedVector& e, const BigInt& q) {
    for (const auto& x : e.payload)
        if (sgn(x) < 0 || x >= q) return false;
    for (const auto& x : e.coding)
        if (sgn(x) < 0 || x >= q) return false;
    return true;
}

}  // namespace

Bytes encode_epoch_pk(std::uint64_t k, const DlGroup& group, const std::vector<BigInt>& generators,
                      const std::vector<BigInt>& original_hashes) {
    const std::size_t w = group.element_bytes();
    ByteWriter out;
    out.put_u64(k);
    write_fixed(out, group.p, w);
    write_fixed(out, group.q, w);
    for (const auto& g : generators) write_fixed(out, g, w);
    for (const auto& h : original_hashes) write_fixed(out, h, w);
    return out.take();
}

crypto::Digest epoch_digest(ByteView epoch_pk) {
    crypto::Hasher h(crypto::HashSpec::sha256());
    h.update(to_bytes("rlnc-epoch-v1"));
    h.update(epoch_pk);
    return h.finish();
}

SourceEpochParams epoch_setup(const crypto::SecretKey& master_sk, const DlGroup& group,
                              const std::vector<gf::CodedVector>& originals, std::uint64_t k, Rng& rng) {
    if (originals.empty()) throw std::invalid_argument("epoch_setup: no original packets");
    SourceEpochParams params;
    params.k = k;
    params.group = group;
    params.n = originals.front().n();
    params.m = originals.front().m();
    if (params.m != originals.size()) throw std::invalid_argument("epoch_setup: need exactly m originals");
    for (std::size_t j = 0; j < originals.size(); ++j) {
        const auto& o = originals[j];
        if (o.n() != params.n || o.m() != params.m) throw std::invalid_argument("epoch_setup: dimension mismatch");
        for (std::size_t c = 0; c < params.m; ++c)
            if (o.coding[c] != (c == j ? 1 : 0)) throw std::invalid_argument("epoch_setup: originals must carry unit coding vectors");
    }
    const std::size_t total = params.n + params.m;
    while (params.generators.size() < total) {
        BigInt g = random_subgroup_element(group, rng);
        bool dup = false;
        for (const auto& x : params.generators) dup = dup || x == g;
        if (!dup) params.generators.push_back(std::move(g));
    }
    for (const auto& o : originals) params.original_hashes.push_back(sign_validity(params, o).v);
    params.epoch_pk = encode_epoch_pk(k, group, params.generators, params.original_hashes);
    params.epoch_id = epoch_digest(params.epoch_pk);
    params.master_sig = crypto::sign(master_sk, params.epoch_pk);
    return params;
}

bool verify_epoch(const SourceEpochParams& params, const crypto::PublicKey& master_pk) {
    if (params.generators.size() != params.n + params.m || params.original_hashes.size() != params.m) return false;
    if (!crypto::verify(master_pk, params.epoch_pk, params.master_sig)) return false;
    if (params.epoch_id != epoch_digest(params.epoch_pk)) return false;
    try {
        if (encode_epoch_pk(params.k, params.group, params.generators, params.original_hashes) != params.epoch_pk)
            return false;
    } catch (const std::exception&) {
        return false;
    }
    for (const auto& g : params.generators)
        if (g == 1 || !in_subgroup(params.group, g)) return false;
    for (const auto& h : params.original_hashes)
        if (!in_subgroup(params.group, h)) return false;
    return true;
}

Sigma sign_validity(const SourceEpochParams& params, const gf::CodedVector& e) {
    check_dims(params, e);
    return {product_range(params.generators, e, params.group.p)};
}

namespace serial {
Sigma sign_validity(const SourceEpochParams& params, const gf::CodedVector& e) {
    check_dims(params, e);
    BigInt acc = 1;
    for (std::size_t i = 0; i < params.generators.size(); ++i)
        acc = acc * powm(params.generators[i], chunk_at(e, i), params.group.p) % params.group.p;
    return {acc};
}
}  // namespace serial

bool verify_validity(const SourceEpochParams& params, const gf::CodedVector& e, const Sigma& sigma) {
    if (e.n() != params.n || e.m() != params.m) return false;
    if (params.generators.size() != params.n + params.m || params.original_hashes.size() != params.m) return false;
    if (!chunks_in_range(e, params.group.q)) return false;
    if (sigma.v < 1 || sigma.v >= params.group.p) return false;
    if (sign_validity(params, e) != sigma) return false;
    BigInt expect = 1;
    for (std::size_t j = 0; j < params.m; ++j)
        if (sgn(e.coding[j]) != 0)
            expect = expect * powm(params.original_hashes[j], e.coding[j], params.group.p) % params.group.p;
    return expect == sigma.v;
}

Sigma combine_validity(const std::vector<Sigma>& sigmas, const std::vector<BigInt>& coeffs, const DlGroup& group) {
    if (sigmas.empty()) throw std::invalid_argument("combine_validity: empty input");
    if (sigmas.size() != coeffs.size()) throw std::invalid_argument("combine_validity: length mismatch");
    BigInt acc = 1;
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        if (sgn(coeffs[i]) == 0) continue;
        acc = acc * powm(sigmas[i].v, coeffs[i], group.p) % group.p;
    }
    return {acc};
}

Sigma identity_sigma() { return {1}; }

}  // namespace rlnc::validity
