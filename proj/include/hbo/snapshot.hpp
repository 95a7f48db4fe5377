#pragma once
#include <cstdint>
#include <string>

#include "hbo/field.hpp"

namespace hbo {

// HBOF layout, little-endian:
//   "HBOF" | version u32 | d u32 | M u32 x d | L f64 | [kind u8] | samples f64...
// real fields carry no kind byte; spectra carry one and store re/im pairs.
constexpr std::uint32_t kSnapshotVersion = 1;

enum class SpectrumKind : std::uint8_t { fourier = 1 };

void write_snapshot(const std::string& path, const RealField& f);
RealField read_snapshot(const std::string& path);
void write_spectrum(const std::string& path, const SpectralField& F, SpectrumKind kind = SpectrumKind::fourier);
SpectralField read_spectrum(const std::string& path, SpectrumKind* kind = nullptr);

}  // namespace hbo
