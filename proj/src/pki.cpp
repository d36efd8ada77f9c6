#include "vanet/pki.hpp"

#include "vanet/errors.hpp"

namespace vanet::pki {

namespace {

constexpr std::string_view VEHICLE_KEY_LABEL = "vanet.symkey.v1";

// Positive-area rectangles: interiors intersect iff both open interval
// projections overlap.
bool interiors_intersect(const Rect& a, const Rect& b) {
    return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

}  // namespace

std::string_view certificate_kind_name(CertificateKind kind) {
    return kind == CertificateKind::ValidCertificate ? "VC" : "AC";
}

RegionMap::RegionMap(std::vector<Region> regions) : regions_(std::move(regions)) {
    for (std::size_t i = 0; i < regions_.size(); ++i) {
        const Rect& r = regions_[i].bounds;
        if (!(r.x1 > r.x0 && r.y1 > r.y0))
            fail(Errc::invalid_region_map,
                 "region " + std::to_string(i) + " has no positive area");
    }
    for (std::size_t i = 0; i < regions_.size(); ++i)
        for (std::size_t j = i + 1; j < regions_.size(); ++j)
            if (interiors_intersect(regions_[i].bounds, regions_[j].bounds))
                fail(Errc::invalid_region_map, "regions " + std::to_string(i) + " and " +
                                                   std::to_string(j) + " overlap");
}

std::size_t locate_region_index(const RegionMap& map, double x, double y) {
    for (std::size_t i = 0; i < map.size(); ++i)
        if (map.at(i).bounds.contains(x, y)) return i;
    fail(Errc::out_of_coverage, "position (" + std::to_string(x) + ", " + std::to_string(y) +
                                    ") lies in no region");
}

const Region& locate_region(const RegionMap& map, double x, double y) {
    return map.at(locate_region_index(map, x, y));
}

crypto::SymmetricKey issue_group_key(const Region& region, const Registration& registration) {
    if (registration.certificate != CertificateKind::ValidCertificate)
        fail(Errc::certificate_revoked,
             "vehicle " + hex_encode(registration.vehicle.id) + " holds an AC");
    return region.group_key;
}

const Registration& CaStore::register_vehicle(const VehicleId& vehicle, CertificateKind kind,
                                              const crypto::Seed& key_seed) {
    if (registrations_.contains(vehicle))
        fail(Errc::already_registered, "vehicle " + hex_encode(vehicle.id));
    Registration reg;
    reg.vehicle = vehicle;
    reg.vehicle_key = crypto::derive_symmetric_key(key_seed, VEHICLE_KEY_LABEL);
    reg.certificate = kind;
    reg.home_ca = id_;
    auto [it, inserted] = registrations_.emplace(vehicle, std::move(reg));
    registration_order_.push_back(vehicle);
    return it->second;
}

crypto::SymmetricKey CaStore::issue_group_key(const Region& region,
                                              const VehicleId& vehicle) const {
    return pki::issue_group_key(region, registration(vehicle));
}

crypto::SymmetricKey CaStore::escrow_key(const CaId& requester, const VehicleId& vehicle) const {
    if (!authorized_cas_.contains(requester))
        fail(Errc::unauthorized_ca, "ca " + hex_encode(requester.id) + " is not in the roster");
    return registration(vehicle).vehicle_key;
}

const Registration& CaStore::flag_adversary(const VehicleId& vehicle) {
    auto it = registrations_.find(vehicle);
    if (it == registrations_.end())
        fail(Errc::not_registered, "vehicle " + hex_encode(vehicle.id));
    it->second.certificate = CertificateKind::AdversaryCertificate;
    return it->second;
}

void CaStore::authorize_ca(const CaId& local_ca) { authorized_cas_.insert(local_ca); }

bool CaStore::is_registered(const VehicleId& vehicle) const {
    return registrations_.contains(vehicle);
}

const Registration& CaStore::registration(const VehicleId& vehicle) const {
    auto it = registrations_.find(vehicle);
    if (it == registrations_.end())
        fail(Errc::not_registered, "vehicle " + hex_encode(vehicle.id));
    return it->second;
}

std::string CaStore::roster_csv() const {
    std::string out = "vehicle_id_hex,certificate_kind,home_ca_id_hex\n";
    for (const VehicleId& v : registration_order_) {
        const Registration& reg = registrations_.at(v);
        out += hex_encode(reg.vehicle.id);
        out += ',';
        out += certificate_kind_name(reg.certificate);
        out += ',';
        out += hex_encode(reg.home_ca.id);
        out += '\n';
    }
    return out;
}

}  // namespace vanet::pki
