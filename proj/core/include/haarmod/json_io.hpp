#pragma once

#include <iosfwd>
#include <string>

#include "haarmod/counting.hpp"
#include "haarmod/sampling.hpp"
#include "haarmod/stats.hpp"

namespace haarmod {

/// Ring descriptors:
///   {"kind":"zm","m":12}
///   {"kind":"fq","p":2,"n":2,"poly":[1,1,1]}        (constant term first)
///   {"kind":"local_pp","p":2,"r":2}
///   {"kind":"local_tp","p":2,"n":1,"k":2}           ("poly" when non-canonical)
/// Big integers and rationals are decimal strings; seeds are decimal
/// strings too (they may exceed the integer range of JSON consumers).
std::string ring_to_json(const Ring& ring);
RingPtr ring_from_json(const std::string& text);

/// CLI ring grammar: zm:<m> | fq:<p>:<n>[:poly=c0,c1,...] |
/// local_pp:<p>:<r> | local_tp:<p>:<n>:<k>
RingPtr parse_ring_flag(const std::string& flag);
std::string ring_flag(const Ring& ring);

std::string factorization_to_json(const Factorization& f);

/// {"ring":..., "rows":N, "cols":M, "entries":[row-major indices]}
std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const std::string& text);

/// JSON lines: one header record, then one {"entries":[...]} per corner.
void write_sample_batch(std::ostream& out, const SampleBatch& batch);
SampleBatch read_sample_batch(std::istream& in);

std::string exact_dist_to_json(const ExactDist& dist);
std::string bounds_report_to_json(const BoundsReport& report);

/// CSV columns: N,mode,tv_num,tv_den,tv_float,draws,seed. Exact rows fill
/// tv_num/tv_den, Monte Carlo rows fill tv_float.
std::string sweep_to_csv(const SweepResult& sweep);
std::string sweep_to_json(const SweepResult& sweep);

}  // namespace haarmod
