#ifndef VANET_PKI_HPP
#define VANET_PKI_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vanet/crypto.hpp"

namespace vanet::pki {

struct VehicleId {
    ByteArray<16> id{};
    auto operator<=>(const VehicleId&) const = default;
};

struct CaId {
    ByteArray<8> id{};
    auto operator<=>(const CaId&) const = default;
};

enum class CertificateKind { ValidCertificate, AdversaryCertificate };

std::string_view certificate_kind_name(CertificateKind kind);

// Home-CA record binding a vehicle to its secret key and certificate kind.
// The key leaves the CA only through escrow_key.
struct Registration {
    VehicleId vehicle;
    crypto::SymmetricKey vehicle_key;
    CertificateKind certificate = CertificateKind::ValidCertificate;
    CaId home_ca;
};

// Half-open axis-aligned rectangle [x0,x1) x [y0,y1), meters.
struct Rect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    bool contains(double x, double y) const {
        return x >= x0 && x < x1 && y >= y0 && y < y1;
    }
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double cx() const { return x0 + width() / 2; }
    double cy() const { return y0 + height() / 2; }
};

// One CA-managed region: its key pair, its group key (AK), its bounds.
struct Region {
    CaId id;
    Rect bounds;
    crypto::SymmetricKey group_key;
    crypto::KeyPair ca_keys;
};

// Ordered, validated-disjoint partition. Construction rejects any pair of
// rectangles whose interiors intersect (Errc::invalid_region_map, naming
// the pair). Degenerate (zero-area) rectangles are rejected too.
class RegionMap {
public:
    RegionMap() = default;
    explicit RegionMap(std::vector<Region> regions);

    const std::vector<Region>& regions() const { return regions_; }
    std::size_t size() const { return regions_.size(); }
    const Region& at(std::size_t i) const { return regions_.at(i); }

private:
    std::vector<Region> regions_;
};

// The unique containing region; membership is half-open so a shared edge
// belongs to exactly one rectangle, and lookup scans in index order.
// Throws Errc::out_of_coverage when no region contains the point.
const Region& locate_region(const RegionMap& map, double x, double y);
std::size_t locate_region_index(const RegionMap& map, double x, double y);

// Certificate gate: the region's AK iff the registration carries a
// ValidCertificate; AdversaryCertificate throws Errc::certificate_revoked.
crypto::SymmetricKey issue_group_key(const Region& region, const Registration& registration);

// The home CA (CA_h): registrations, escrowed vehicle keys, and the roster
// of local CAs allowed to request them. Single-writer; const access is
// safe to share across threads.
class CaStore {
public:
    explicit CaStore(CaId id) : id_(id) {}

    CaId id() const { return id_; }

    // Throws Errc::already_registered on a duplicate vehicle id.
    const Registration& register_vehicle(const VehicleId& vehicle, CertificateKind kind,
                                         const crypto::Seed& key_seed);

    // Certificate gate against the CURRENT registration state.
    // Throws Errc::not_registered / Errc::certificate_revoked.
    crypto::SymmetricKey issue_group_key(const Region& region, const VehicleId& vehicle) const;

    // Escrow of the vehicle's secret key to a local CA over the modeled
    // secure channel. Throws Errc::unauthorized_ca for requesters outside
    // the roster and Errc::not_registered for unknown vehicles (the
    // cross-region / unknown-id surface).
    crypto::SymmetricKey escrow_key(const CaId& requester, const VehicleId& vehicle) const;

    // Certificate kind becomes AdversaryCertificate; idempotent.
    // Throws Errc::not_registered for unknown vehicles.
    const Registration& flag_adversary(const VehicleId& vehicle);

    void authorize_ca(const CaId& local_ca);

    bool is_registered(const VehicleId& vehicle) const;
    const Registration& registration(const VehicleId& vehicle) const;
    std::size_t registered_count() const { return registrations_.size(); }

    // CSV export `vehicle_id_hex,certificate_kind,home_ca_id_hex`, rows in
    // registration order.
    std::string roster_csv() const;

private:
    CaId id_;
    std::map<VehicleId, Registration> registrations_;
    std::vector<VehicleId> registration_order_;
    std::set<CaId> authorized_cas_;
};

}  // namespace vanet::pki

#endif  // VANET_PKI_HPP
