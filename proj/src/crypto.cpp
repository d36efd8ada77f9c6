#include "vanet/crypto.hpp"

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/crypto.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/obj_mac.h>

#include <cstring>
#include <memory>
#include <stdexcept>

#include "vanet/errors.hpp"

namespace vanet::crypto {

namespace {

constexpr std::string_view KEYGEN_LABEL = "vanet.p224.keygen.v1";
constexpr std::string_view EPHEMERAL_LABEL = "vanet.p224.ephemeral.v1";
constexpr std::string_view KDF_KEY = "vanet.hpke.v1";
constexpr std::size_t FIELD_SIZE = 28;
constexpr std::size_t AES_IV_SIZE = 16;

[[noreturn]] void internal_error(const char* what) {
    throw std::runtime_error(std::string("openssl failure in ") + what);
}

struct BnDeleter {
    void operator()(BIGNUM* p) const { BN_free(p); }
};
struct BnCtxDeleter {
    void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};
struct PointDeleter {
    void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};
struct CipherCtxDeleter {
    void operator()(EVP_CIPHER_CTX* p) const { EVP_CIPHER_CTX_free(p); }
};
struct MacCtxDeleter {
    void operator()(EVP_MAC_CTX* p) const { EVP_MAC_CTX_free(p); }
};

using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtxPtr = std::unique_ptr<BN_CTX, BnCtxDeleter>;
using PointPtr = std::unique_ptr<EC_POINT, PointDeleter>;

const EC_GROUP* p224_group() {
    static EC_GROUP* group = [] {
        EC_GROUP* g = EC_GROUP_new_by_curve_name(NID_secp224r1);
        if (!g) internal_error("EC_GROUP_new_by_curve_name");
        return g;
    }();
    return group;
}

EVP_MAC* hmac_algorithm() {
    static EVP_MAC* mac = [] {
        EVP_MAC* m = EVP_MAC_fetch(nullptr, "HMAC", nullptr);
        if (!m) internal_error("EVP_MAC_fetch");
        return m;
    }();
    return mac;
}

ByteArray<32> hmac_sha256(ByteView key, ByteView message) {
    std::unique_ptr<EVP_MAC_CTX, MacCtxDeleter> ctx(EVP_MAC_CTX_new(hmac_algorithm()));
    if (!ctx) internal_error("EVP_MAC_CTX_new");
    char digest_name[] = "SHA256";
    OSSL_PARAM params[] = {
        OSSL_PARAM_construct_utf8_string(OSSL_MAC_PARAM_DIGEST, digest_name, 0),
        OSSL_PARAM_construct_end(),
    };
    if (EVP_MAC_init(ctx.get(), key.data(), key.size(), params) != 1)
        internal_error("EVP_MAC_init");
    if (!message.empty() && EVP_MAC_update(ctx.get(), message.data(), message.size()) != 1)
        internal_error("EVP_MAC_update");
    ByteArray<32> out{};
    std::size_t out_len = 0;
    if (EVP_MAC_final(ctx.get(), out.data(), &out_len, out.size()) != 1 || out_len != 32)
        internal_error("EVP_MAC_final");
    return out;
}

// d = 1 + HMAC-SHA256(seed, label) mod (n - 1), so 1 <= d <= n-1.
BnPtr scalar_from_seed(const Seed& seed, std::string_view label, BN_CTX* ctx) {
    ByteArray<32> raw = hmac_sha256(seed, to_bytes(label));
    BnPtr t(BN_bin2bn(raw.data(), static_cast<int>(raw.size()), nullptr));
    BnPtr order(BN_new());
    BnPtr d(BN_new());
    if (!t || !order || !d) internal_error("BN_new");
    if (EC_GROUP_get_order(p224_group(), order.get(), ctx) != 1)
        internal_error("EC_GROUP_get_order");
    if (BN_sub_word(order.get(), 1) != 1) internal_error("BN_sub_word");
    if (BN_mod(d.get(), t.get(), order.get(), ctx) != 1) internal_error("BN_mod");
    if (BN_add_word(d.get(), 1) != 1) internal_error("BN_add_word");
    return d;
}

Bytes point_to_compressed(const EC_POINT* p, BN_CTX* ctx) {
    Bytes out(PUBLIC_KEY_SIZE);
    std::size_t written = EC_POINT_point2oct(p224_group(), p, POINT_CONVERSION_COMPRESSED,
                                             out.data(), out.size(), ctx);
    if (written != PUBLIC_KEY_SIZE) internal_error("EC_POINT_point2oct");
    return out;
}

Bytes public_from_scalar(const BIGNUM* d, BN_CTX* ctx) {
    PointPtr p(EC_POINT_new(p224_group()));
    if (!p) internal_error("EC_POINT_new");
    if (EC_POINT_mul(p224_group(), p.get(), d, nullptr, nullptr, ctx) != 1)
        internal_error("EC_POINT_mul");
    return point_to_compressed(p.get(), ctx);
}

// Returns the 28-byte big-endian x coordinate of d * Q, or throws
// Errc::decryption_failed when Q does not parse as a curve point.
ByteArray<FIELD_SIZE> ecdh_x(const BIGNUM* d, ByteView peer_public, BN_CTX* ctx) {
    PointPtr q(EC_POINT_new(p224_group()));
    if (!q) internal_error("EC_POINT_new");
    if (peer_public.size() != PUBLIC_KEY_SIZE ||
        EC_POINT_oct2point(p224_group(), q.get(), peer_public.data(), peer_public.size(),
                           ctx) != 1)
        fail(Errc::decryption_failed, "peer public key is not a curve point");
    PointPtr s(EC_POINT_new(p224_group()));
    if (!s) internal_error("EC_POINT_new");
    if (EC_POINT_mul(p224_group(), s.get(), nullptr, q.get(), d, ctx) != 1)
        internal_error("EC_POINT_mul");
    if (EC_POINT_is_at_infinity(p224_group(), s.get()))
        fail(Errc::decryption_failed, "degenerate shared point");
    BnPtr x(BN_new());
    if (!x) internal_error("BN_new");
    if (EC_POINT_get_affine_coordinates(p224_group(), s.get(), x.get(), nullptr, ctx) != 1)
        internal_error("EC_POINT_get_affine_coordinates");
    ByteArray<FIELD_SIZE> out{};
    if (BN_bn2binpad(x.get(), out.data(), static_cast<int>(out.size())) < 0)
        internal_error("BN_bn2binpad");
    return out;
}

struct SealKeys {
    ByteArray<32> enc;
    ByteArray<32> mac;
    ByteArray<AES_IV_SIZE> iv;
};

SealKeys derive_seal_keys(ByteView shared_x, ByteView eph_pub, ByteView recip_pub) {
    Bytes ikm;
    ikm.reserve(shared_x.size() + eph_pub.size() + recip_pub.size());
    append(ikm, shared_x);
    append(ikm, eph_pub);
    append(ikm, recip_pub);
    ByteArray<32> prk = hmac_sha256(to_bytes(KDF_KEY), ikm);

    SealKeys keys{};
    keys.enc = hmac_sha256(prk, Bytes{0x01});
    Bytes t2 = to_bytes(keys.enc);
    t2.push_back(0x02);
    keys.mac = hmac_sha256(prk, t2);
    Bytes t3 = to_bytes(keys.mac);
    t3.push_back(0x03);
    ByteArray<32> full_iv = hmac_sha256(prk, t3);
    std::memcpy(keys.iv.data(), full_iv.data(), AES_IV_SIZE);
    return keys;
}

Bytes aes256_ctr(const ByteArray<32>& key, const ByteArray<AES_IV_SIZE>& iv, ByteView in) {
    std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter> ctx(EVP_CIPHER_CTX_new());
    if (!ctx) internal_error("EVP_CIPHER_CTX_new");
    if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_ctr(), nullptr, key.data(), iv.data()) != 1)
        internal_error("EVP_EncryptInit_ex");
    Bytes out(in.size());
    int out_len = 0;
    if (!in.empty() &&
        EVP_EncryptUpdate(ctx.get(), out.data(), &out_len, in.data(),
                          static_cast<int>(in.size())) != 1)
        internal_error("EVP_EncryptUpdate");
    int final_len = 0;
    if (EVP_EncryptFinal_ex(ctx.get(), out.data() + out_len, &final_len) != 1)
        internal_error("EVP_EncryptFinal_ex");
    out.resize(static_cast<std::size_t>(out_len + final_len));
    return out;
}

}  // namespace

ByteArray<32> sha256(ByteView data) {
    ByteArray<32> out{};
    unsigned int out_len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &out_len, EVP_sha256(), nullptr) != 1 ||
        out_len != 32)
        internal_error("EVP_Digest");
    return out;
}

Digest keyed_digest(const SymmetricKey& key, ByteView message) {
    if (message.size() > MAX_DIGEST_MESSAGE)
        fail(Errc::message_too_large, "digest message exceeds " +
                                          std::to_string(MAX_DIGEST_MESSAGE) + " bytes");
    return Digest{hmac_sha256(key.bytes, message)};
}

SymmetricKey derive_symmetric_key(const Seed& seed, std::string_view label) {
    return SymmetricKey{hmac_sha256(seed, to_bytes(label))};
}

KeyPair generate_keypair(const Seed& seed) {
    BnCtxPtr ctx(BN_CTX_new());
    if (!ctx) internal_error("BN_CTX_new");
    BnPtr d = scalar_from_seed(seed, KEYGEN_LABEL, ctx.get());
    KeyPair kp;
    kp.public_key = public_from_scalar(d.get(), ctx.get());
    kp.secret_key.resize(SECRET_KEY_SIZE);
    if (BN_bn2binpad(d.get(), kp.secret_key.data(), static_cast<int>(SECRET_KEY_SIZE)) < 0)
        internal_error("BN_bn2binpad");
    return kp;
}

ByteArray<FINGERPRINT_SIZE> fingerprint(ByteView public_key) {
    return sha256(public_key);
}

Ciphertext encrypt(ByteView public_key, ByteView plaintext, const Seed& nonce_seed) {
    if (plaintext.size() > MAX_PLAINTEXT)
        fail(Errc::message_too_large,
             "plaintext exceeds " + std::to_string(MAX_PLAINTEXT) + " bytes");
    if (public_key.size() != PUBLIC_KEY_SIZE)
        throw std::invalid_argument("public key must be " + std::to_string(PUBLIC_KEY_SIZE) +
                                    " bytes");
    BnCtxPtr ctx(BN_CTX_new());
    if (!ctx) internal_error("BN_CTX_new");

    BnPtr eph = scalar_from_seed(nonce_seed, EPHEMERAL_LABEL, ctx.get());
    Bytes eph_pub = public_from_scalar(eph.get(), ctx.get());
    ByteArray<FIELD_SIZE> shared = ecdh_x(eph.get(), public_key, ctx.get());
    SealKeys keys = derive_seal_keys(shared, eph_pub, public_key);

    Bytes body = aes256_ctr(keys.enc, keys.iv, plaintext);
    Bytes mac_input = eph_pub;
    append(mac_input, body);
    ByteArray<32> tag = hmac_sha256(keys.mac, mac_input);

    Ciphertext ct;
    ct.bytes = std::move(eph_pub);
    append(ct.bytes, body);
    append(ct.bytes, tag);
    ct.recipient_hint = fingerprint(public_key);
    return ct;
}

Bytes decrypt(ByteView secret_key, const Ciphertext& ct) {
    if (secret_key.size() != SECRET_KEY_SIZE)
        throw std::invalid_argument("secret key must be " + std::to_string(SECRET_KEY_SIZE) +
                                    " bytes");
    if (ct.bytes.size() < SEAL_OVERHEAD)
        fail(Errc::decryption_failed, "ciphertext shorter than seal overhead");

    BnCtxPtr ctx(BN_CTX_new());
    if (!ctx) internal_error("BN_CTX_new");
    BnPtr d(BN_bin2bn(secret_key.data(), static_cast<int>(secret_key.size()), nullptr));
    if (!d) internal_error("BN_bin2bn");

    Bytes own_pub = public_from_scalar(d.get(), ctx.get());
    if (fingerprint(own_pub) != ct.recipient_hint)
        fail(Errc::decryption_failed, "recipient hint does not match this key pair");

    ByteView eph_pub = ByteView(ct.bytes).first(PUBLIC_KEY_SIZE);
    ByteView body = ByteView(ct.bytes).subspan(PUBLIC_KEY_SIZE,
                                               ct.bytes.size() - SEAL_OVERHEAD);
    ByteView tag = ByteView(ct.bytes).last(DIGEST_SIZE);

    ByteArray<FIELD_SIZE> shared = ecdh_x(d.get(), eph_pub, ctx.get());
    SealKeys keys = derive_seal_keys(shared, eph_pub, own_pub);

    Bytes mac_input(eph_pub.begin(), eph_pub.end());
    append(mac_input, body);
    ByteArray<32> expect = hmac_sha256(keys.mac, mac_input);
    if (CRYPTO_memcmp(expect.data(), tag.data(), expect.size()) != 0)
        fail(Errc::decryption_failed, "authentication tag mismatch");

    return aes256_ctr(keys.enc, keys.iv, body);
}

}  // namespace vanet::crypto
