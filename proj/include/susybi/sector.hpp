#pragma once

// The two-membered sector index of a supersymmetric pair and a small
// container for (+, -) pairs of same-shaped objects.

#include <stdexcept>
#include <string>

namespace susybi {

enum class Sector : int { plus = 0, minus = 1 };

constexpr Sector flip(Sector s) { return s == Sector::plus ? Sector::minus : Sector::plus; }

/// +1 for the plus sector, -1 for the minus sector.
constexpr int sector_sign(Sector s) { return s == Sector::plus ? +1 : -1; }

constexpr const char* sector_name(Sector s) { return s == Sector::plus ? "plus" : "minus"; }

inline Sector sector_from_name(const std::string& name) {
    if (name == "plus" || name == "+") return Sector::plus;
    if (name == "minus" || name == "-") return Sector::minus;
    throw std::invalid_argument("sector_from_name: unknown sector '" + name + "'");
}

template <class T>
struct SectorPair {
    T plus;
    T minus;

    T& operator[](Sector s) { return s == Sector::plus ? plus : minus; }
    const T& operator[](Sector s) const { return s == Sector::plus ? plus : minus; }
};

inline constexpr Sector kBothSectors[2] = {Sector::plus, Sector::minus};

}  // namespace susybi
