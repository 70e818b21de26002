#include "haarmod/json_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace haarmod {

namespace {

using json = nlohmann::ordered_json;

std::string to_dec(const BigCount& z) {
    return z.get_str();
}

json rational_to_json(const BigRational& q) {
    return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

json ring_descriptor(const Ring& ring) {
    switch (ring.kind()) {
        case RingKind::Zm:
            return json{{"kind", "zm"}, {"m", static_cast<const ZmRing&>(ring).modulus()}};
        case RingKind::Fq: {
            const auto& f = static_cast<const FqField&>(ring);
            return json{{"kind", "fq"}, {"p", f.p()}, {"n", f.degree()}, {"poly", f.modulus_poly()}};
        }
        case RingKind::LocalPrimePower: {
            const auto& l = static_cast<const LocalRing&>(ring);
            return json{{"kind", "local_pp"}, {"p", l.residue_field().p()}, {"r", l.depth()}};
        }
        case RingKind::LocalTruncatedPoly: {
            const auto& l = static_cast<const LocalRing&>(ring);
            const auto& base = l.residue_field();
            json d{{"kind", "local_tp"}, {"p", base.p()}, {"n", base.degree()}, {"k", l.depth()}};
            if (base.degree() >= 2 && base.modulus_poly() != canonical_modulus_poly(base.p(), base.degree())) {
                d["poly"] = base.modulus_poly();
            }
            return d;
        }
    }
    throw std::domain_error("ring_descriptor: unsupported ring kind");
}

RingPtr ring_from_descriptor(const json& d) {
    if (!d.is_object() || !d.contains("kind"))
        throw std::invalid_argument("ring descriptor: expected an object with a kind");
    const std::string kind = d.at("kind").get<std::string>();
    if (kind == "zm") return make_zm(d.at("m").get<std::uint64_t>());
    if (kind == "fq") {
        auto p = d.at("p").get<std::uint64_t>();
        auto n = d.at("n").get<std::uint32_t>();
        if (d.contains("poly")) return make_fq(p, n, d.at("poly").get<std::vector<std::uint64_t>>());
        return make_fq(p, n);
    }
    if (kind == "local_pp") {
        return LocalRing::prime_power(d.at("p").get<std::uint64_t>(), d.at("r").get<std::uint32_t>());
    }
    if (kind == "local_tp") {
        auto p = d.at("p").get<std::uint64_t>();
        auto n = d.at("n").get<std::uint32_t>();
        auto base = d.contains("poly")
                        ? make_fq(p, n, d.at("poly").get<std::vector<std::uint64_t>>())
                        : make_fq(p, n);
        return LocalRing::truncated_poly(base, d.at("k").get<std::uint32_t>());
    }
    throw std::invalid_argument("ring descriptor: unknown kind '" + kind + "'");
}

json parse_checked(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument(std::string(what) + ": malformed JSON");
    return j;
}

std::vector<std::string> split_string(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument(std::string(what) + ": expected an unsigned integer, got '" + s + "'");
    errno = 0;
    char* end = nullptr;
    std::uint64_t v = std::strtoull(s.c_str(), &end, 10);
    if (errno != 0 || end != s.c_str() + s.size())
        throw std::invalid_argument(std::string(what) + ": integer out of range: '" + s + "'");
    return v;
}

}  // namespace

std::string ring_to_json(const Ring& ring) {
    return ring_descriptor(ring).dump();
}

RingPtr ring_from_json(const std::string& text) {
    return ring_from_descriptor(parse_checked(text, "ring_from_json"));
}

RingPtr parse_ring_flag(const std::string& flag) {
    auto parts = split_string(flag, ':');
    if (parts.empty()) throw std::invalid_argument("ring flag: empty");
    const std::string& kind = parts[0];
    if (kind == "zm") {
        if (parts.size() != 2) throw std::invalid_argument("ring flag: expected zm:<m>");
        return make_zm(parse_u64(parts[1], "zm modulus"));
    }
    if (kind == "fq") {
        if (parts.size() != 3 && parts.size() != 4)
            throw std::invalid_argument("ring flag: expected fq:<p>:<n>[:poly=c0,c1,...]");
        auto p = parse_u64(parts[1], "fq characteristic");
        auto n = static_cast<std::uint32_t>(parse_u64(parts[2], "fq degree"));
        if (parts.size() == 3) return make_fq(p, n);
        if (parts[3].rfind("poly=", 0) != 0)
            throw std::invalid_argument("ring flag: fourth field must be poly=c0,c1,...");
        std::vector<std::uint64_t> poly;
        for (const auto& c : split_string(parts[3].substr(5), ','))
            poly.push_back(parse_u64(c, "fq poly coefficient"));
        return make_fq(p, n, std::move(poly));
    }
    if (kind == "local_pp") {
        if (parts.size() != 3) throw std::invalid_argument("ring flag: expected local_pp:<p>:<r>");
        return LocalRing::prime_power(parse_u64(parts[1], "local_pp prime"),
                                      static_cast<std::uint32_t>(parse_u64(parts[2], "local_pp exponent")));
    }
    if (kind == "local_tp") {
        if (parts.size() != 4)
            throw std::invalid_argument("ring flag: expected local_tp:<p>:<n>:<k>");
        auto base = make_fq(parse_u64(parts[1], "local_tp characteristic"),
                            static_cast<std::uint32_t>(parse_u64(parts[2], "local_tp degree")));
        return LocalRing::truncated_poly(base,
                                         static_cast<std::uint32_t>(parse_u64(parts[3], "local_tp order")));
    }
    throw std::invalid_argument("ring flag: unknown ring kind '" + kind + "'");
}

std::string ring_flag(const Ring& ring) {
    switch (ring.kind()) {
        case RingKind::Zm:
            return "zm:" + std::to_string(static_cast<const ZmRing&>(ring).modulus());
        case RingKind::Fq: {
            const auto& f = static_cast<const FqField&>(ring);
            return "fq:" + std::to_string(f.p()) + ":" + std::to_string(f.degree());
        }
        case RingKind::LocalPrimePower: {
            const auto& l = static_cast<const LocalRing&>(ring);
            return "local_pp:" + std::to_string(l.residue_field().p()) + ":" + std::to_string(l.depth());
        }
        case RingKind::LocalTruncatedPoly: {
            const auto& l = static_cast<const LocalRing&>(ring);
            return "local_tp:" + std::to_string(l.residue_field().p()) + ":" +
                   std::to_string(l.residue_field().degree()) + ":" + std::to_string(l.depth());
        }
    }
    throw std::domain_error("ring_flag: unsupported ring kind");
}

std::string factorization_to_json(const Factorization& f) {
    json factors = json::array();
    for (const auto& [p, r] : f.factors) factors.push_back(json::array({p, r}));
    return json{{"m", f.m}, {"factors", factors}}.dump();
}

std::string matrix_to_json(const Matrix& m) {
    return json{{"ring", ring_descriptor(m.ring())},
                {"rows", m.rows()},
                {"cols", m.cols()},
                {"entries", m.entries()}}
        .dump();
}

Matrix matrix_from_json(const std::string& text) {
    json j = parse_checked(text, "matrix_from_json");
    auto ring = ring_from_descriptor(j.at("ring"));
    return Matrix(ring, j.at("rows").get<std::uint32_t>(), j.at("cols").get<std::uint32_t>(),
                  j.at("entries").get<std::vector<std::uint64_t>>());
}

void write_sample_batch(std::ostream& out, const SampleBatch& batch) {
    json header{{"ring", ring_descriptor(*batch.ring)},
                {"N", batch.n},
                {"S", batch.s},
                {"seed", std::to_string(batch.seed)},
                {"rng_version", batch.rng_version},
                {"count", batch.corners.size()}};
    out << header.dump() << '\n';
    for (const auto& corner : batch.corners) {
        out << json{{"entries", corner}}.dump() << '\n';
    }
}

SampleBatch read_sample_batch(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("read_sample_batch: missing header record");
    json header = parse_checked(line, "sample batch header");
    SampleBatch batch;
    batch.ring = ring_from_descriptor(header.at("ring"));
    batch.n = header.at("N").get<std::uint32_t>();
    batch.s = header.at("S").get<std::uint32_t>();
    batch.seed = parse_u64(header.at("seed").get<std::string>(), "sample batch seed");
    batch.rng_version = header.at("rng_version").get<std::string>();
    const auto count = header.at("count").get<std::uint64_t>();
    const std::size_t cells = std::size_t{batch.s} * batch.s;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json rec = parse_checked(line, "sample batch record");
        auto entries = rec.at("entries").get<std::vector<std::uint64_t>>();
        if (entries.size() != cells)
            throw std::invalid_argument("read_sample_batch: corner size mismatch");
        for (std::uint64_t e : entries) {
            if (e >= batch.ring->size())
                throw std::invalid_argument("read_sample_batch: entry out of ring range");
        }
        batch.corners.push_back(std::move(entries));
    }
    if (batch.corners.size() != count)
        throw std::invalid_argument("read_sample_batch: record count does not match header");
    return batch;
}

std::string exact_dist_to_json(const ExactDist& dist) {
    json corners = json::array();
    for (const auto& [key, mass] : dist.mass) {
        json rec{{"corner", key}};
        rec["num"] = mass.get_num().get_str();
        rec["den"] = mass.get_den().get_str();
        corners.push_back(std::move(rec));
    }
    return json{{"ring", ring_descriptor(*dist.ring)},
                {"s", dist.s},
                {"corners", corners},
                {"residual_mass", rational_to_json(dist.residual_mass)},
                {"residual_corners", to_dec(dist.residual_corners)}}
        .dump();
}

std::string bounds_report_to_json(const BoundsReport& report) {
    json j{{"p", report.p},   {"r", report.r},
           {"n", report.n},   {"s", report.s},
           {"lower", to_dec(report.lower)}, {"upper", to_dec(report.upper)},
           {"ratio_lower", rational_to_json(report.ratio_lower)}};
    j["ratio_upper"] = report.ratio_upper ? rational_to_json(*report.ratio_upper) : json(nullptr);
    return j.dump();
}

std::string sweep_to_csv(const SweepResult& sweep) {
    std::ostringstream out;
    out << "N,mode,tv_num,tv_den,tv_float,draws,seed\n";
    for (const SweepRow& row : sweep.rows) {
        out << row.n << ',' << (row.mode == SweepMode::Exact ? "exact" : "mc") << ',';
        if (row.tv_exact) {
            out << row.tv_exact->get_num().get_str() << ',' << row.tv_exact->get_den().get_str();
        } else {
            out << ',';
        }
        out << ',';
        if (row.tv_mc) out << format_double(*row.tv_mc);
        out << ',' << row.draws << ',' << row.seed << '\n';
    }
    return out.str();
}

std::string sweep_to_json(const SweepResult& sweep) {
    json rows = json::array();
    for (const SweepRow& row : sweep.rows) {
        json r{{"N", row.n}, {"mode", row.mode == SweepMode::Exact ? "exact" : "mc"}};
        if (row.tv_exact) {
            r["tv_num"] = row.tv_exact->get_num().get_str();
            r["tv_den"] = row.tv_exact->get_den().get_str();
            r["tv_float"] = row.tv_exact->get_d();
        }
        if (row.tv_mc) r["tv_float"] = *row.tv_mc;
        r["draws"] = row.draws;
        r["seed"] = std::to_string(row.seed);
        rows.push_back(std::move(r));
    }
    return json{{"ring", ring_descriptor(*sweep.ring)},
                {"s", sweep.s},
                {"mode", sweep.mode == SweepMode::Exact ? "exact" : "mc"},
                {"rows", rows}}
        .dump();
}

}  // namespace haarmod
