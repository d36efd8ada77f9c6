#include "vanet/fixtures.hpp"

#include <algorithm>

#include "vanet/crypto.hpp"
#include "vanet/protocol.hpp"

namespace vanet::fixtures {

namespace {

crypto::Seed fixture_seed(const std::string& tag) {
    Bytes raw = fixture_bytes(tag, crypto::SEED_SIZE);
    crypto::Seed s{};
    std::copy(raw.begin(), raw.end(), s.begin());
    return s;
}

crypto::SymmetricKey fixture_key(const std::string& tag) {
    return crypto::SymmetricKey{fixture_seed(tag)};
}

}  // namespace

Bytes fixture_bytes(std::string_view tag, std::size_t n) {
    Bytes out;
    std::size_t ctr = 0;
    while (out.size() < n) {
        std::string label = "vanet.fixture." + std::string(tag) + "." + std::to_string(ctr++);
        append(out, crypto::sha256(to_bytes(std::string_view(label))));
    }
    out.resize(n);
    return out;
}

std::string keyed_digest_vectors() {
    std::string out;
    auto emit = [&](const crypto::SymmetricKey& key, ByteView msg) {
        out += hex_encode(key.bytes) + "," + hex_encode(msg) + "," +
               hex_encode(crypto::keyed_digest(key, msg).bytes) + "\n";
    };
    emit(crypto::SymmetricKey{}, Bytes{});
    const std::size_t msg_lens[] = {0, 1, 3, 16, 32, 33, 64, 100, 255, 1000, 4096, 65536};
    for (std::size_t i = 0; i < std::size(msg_lens); ++i) {
        std::string idx = std::to_string(i);
        emit(fixture_key("kd.key." + idx), fixture_bytes("kd.msg." + idx, msg_lens[i]));
    }
    return out;
}

std::string keypair_vectors() {
    std::string out;
    for (int i = 0; i < 8; ++i) {
        crypto::Seed seed = fixture_seed("kp.seed." + std::to_string(i));
        crypto::KeyPair kp = crypto::generate_keypair(seed);
        out += hex_encode(seed) + "," + hex_encode(kp.public_key) + "," +
               hex_encode(kp.secret_key) + "\n";
    }
    return out;
}

std::string encrypt_vectors() {
    std::string out;
    const std::size_t pt_lens[] = {0, 1, 17, 48, 64, 256, 1000, 4096};
    for (std::size_t i = 0; i < std::size(pt_lens); ++i) {
        std::string idx = std::to_string(i);
        crypto::Seed recip_seed = fixture_seed("enc.recip." + idx);
        crypto::Seed nonce_seed = fixture_seed("enc.nonce." + idx);
        Bytes pt = fixture_bytes("enc.pt." + idx, pt_lens[i]);
        crypto::KeyPair kp = crypto::generate_keypair(recip_seed);
        crypto::Ciphertext ct = crypto::encrypt(kp.public_key, pt, nonce_seed);
        out += hex_encode(recip_seed) + "," + hex_encode(nonce_seed) + "," + hex_encode(pt) +
               "," + hex_encode(ct.recipient_hint) + "," + hex_encode(ct.bytes) + "\n";
    }
    return out;
}

std::string wire_vectors() {
    std::string out;
    const std::size_t payload_lens[] = {0, 13, 64, 300};
    for (std::size_t i = 0; i < std::size(payload_lens); ++i) {
        std::string idx = std::to_string(i);
        Bytes payload = fixture_bytes("wire.payload." + idx, payload_lens[i]);
        crypto::SymmetricKey group_key = fixture_key("wire.ak." + idx);
        pki::VehicleId vehicle;
        Bytes vid = fixture_bytes("wire.vid." + idx, vehicle.id.size());
        std::copy(vid.begin(), vid.end(), vehicle.id.begin());
        crypto::SymmetricKey vehicle_key = fixture_key("wire.vkey." + idx);
        pki::CaId home_ca;
        Bytes cid = fixture_bytes("wire.ca." + idx, home_ca.id.size());
        std::copy(cid.begin(), cid.end(), home_ca.id.begin());
        crypto::Seed ca_seed = fixture_seed("wire.caseed." + idx);
        crypto::Seed nonce_seed = fixture_seed("wire.nonce." + idx);

        crypto::KeyPair ca = crypto::generate_keypair(ca_seed);
        protocol::SafetyMessage msg = protocol::build_safety_message(
            payload, group_key, vehicle, vehicle_key, home_ca, ca.public_key, nonce_seed);
        out += hex_encode(payload) + "," + hex_encode(group_key.bytes) + "," +
               hex_encode(vehicle.id) + "," + hex_encode(vehicle_key.bytes) + "," +
               hex_encode(home_ca.id) + "," + hex_encode(ca_seed) + "," +
               hex_encode(nonce_seed) + "," + hex_encode(protocol::encode_message(msg)) + "\n";
    }
    return out;
}

}  // namespace vanet::fixtures
