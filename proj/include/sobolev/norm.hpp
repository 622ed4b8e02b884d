#pragma once

#include <string>

namespace sobolev {

/// Which equivalent inner product defines H^s (and therefore E_s*).
///
///   BesselV1  (1 + 4 pi^2 |xi|^2)^s
///   BesselV2  1 + (2 pi |xi|)^(2s)          equivalent to BesselV1 only for s >= 1
///   SeriesM   (1 + 4 pi^2 |k|^2)^m          integer order m on (0,1)^N
///   TorusS    (1 + 4 pi^2 |k|^2)^s          periodic Sobolev space on T^N
enum class NormVariant { BesselV1, BesselV2, SeriesM, TorusS };

struct SobolevSpec {
  double order = 0.0;
  NormVariant variant = NormVariant::BesselV1;

  /// Throws InvalidArgument for s < 0, BesselV2 with s < 1, or SeriesM with non-integer order.
  void validate() const;
};

std::string to_string(NormVariant v);
NormVariant norm_variant_from_string(const std::string& name);

}  // namespace sobolev
