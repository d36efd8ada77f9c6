#ifndef VANET_CRYPTO_HPP
#define VANET_CRYPTO_HPP

#include <compare>
#include <cstddef>
#include <cstdint>

#include "vanet/bytes.hpp"

namespace vanet::crypto {

// All operations here are pure and deterministic: every source of
// randomness is a caller-supplied 32-byte seed.

inline constexpr std::size_t SYMMETRIC_KEY_SIZE = 32;
inline constexpr std::size_t DIGEST_SIZE = 32;
inline constexpr std::size_t SEED_SIZE = 32;
inline constexpr std::size_t PUBLIC_KEY_SIZE = 29;   // SEC1 compressed secp224r1 point
inline constexpr std::size_t SECRET_KEY_SIZE = 28;   // big-endian scalar
inline constexpr std::size_t FINGERPRINT_SIZE = 32;  // SHA-256 of the public bytes
inline constexpr std::size_t SEAL_OVERHEAD = PUBLIC_KEY_SIZE + DIGEST_SIZE;

inline constexpr std::size_t MAX_DIGEST_MESSAGE = 1u << 16;
inline constexpr std::size_t MAX_PLAINTEXT = 1u << 12;

using Seed = ByteArray<SEED_SIZE>;

struct SymmetricKey {
    ByteArray<SYMMETRIC_KEY_SIZE> bytes{};
    auto operator<=>(const SymmetricKey&) const = default;
};

struct Digest {
    ByteArray<DIGEST_SIZE> bytes{};
    auto operator<=>(const Digest&) const = default;
};

struct KeyPair {
    Bytes public_key;  // PUBLIC_KEY_SIZE bytes
    Bytes secret_key;  // SECRET_KEY_SIZE bytes
};

// Sealed payload plus a fingerprint of the intended recipient's public key.
// Decryption with any other key pair fails.
struct Ciphertext {
    Bytes bytes;
    ByteArray<FINGERPRINT_SIZE> recipient_hint{};
    bool operator==(const Ciphertext&) const = default;
};

// HMAC-SHA256. Throws Errc::message_too_large beyond MAX_DIGEST_MESSAGE.
Digest keyed_digest(const SymmetricKey& key, ByteView message);

// Derives a symmetric key from a seed; distinct seeds yield distinct keys.
SymmetricKey derive_symmetric_key(const Seed& seed, std::string_view label);

// Deterministic secp224r1 key pair: the scalar is derived from the seed.
KeyPair generate_keypair(const Seed& seed);

ByteArray<FINGERPRINT_SIZE> fingerprint(ByteView public_key);

// Hybrid seal: ephemeral ECDH on secp224r1, HMAC-based KDF, AES-256-CTR
// body, HMAC-SHA256 tag. Deterministic for a fixed nonce_seed.
// Throws Errc::message_too_large beyond MAX_PLAINTEXT.
Ciphertext encrypt(ByteView public_key, ByteView plaintext, const Seed& nonce_seed);

// Inverse of encrypt. Throws Errc::decryption_failed on a recipient-hint
// mismatch, a corrupted ciphertext, or a wrong secret key.
Bytes decrypt(ByteView secret_key, const Ciphertext& ct);

// SHA-256, exposed for fingerprints and fault-report message hashes.
ByteArray<32> sha256(ByteView data);

}  // namespace vanet::crypto

#endif  // VANET_CRYPTO_HPP
