#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace letf {

enum class SixValue : std::uint8_t { T, T0, B, N, F0, F };

// Paper order, used for tables and for every enumeration.
inline constexpr std::array<SixValue, 6> all_values{
    SixValue::T, SixValue::T0, SixValue::B, SixValue::N, SixValue::F0, SixValue::F};

std::string_view to_string(SixValue v);
std::optional<SixValue> parse_value(std::string_view name);

// A triple (z1, z2, z3): the values of A, ~A and @A at once.
// Only the six legal triples can be constructed.
class Snapshot {
public:
    constexpr Snapshot() = default; // n = (0,0,0)
    constexpr Snapshot(SixValue v) : bits_(encode(v)) {}

    static constexpr std::optional<Snapshot> try_make(bool z1, bool z2, bool z3) {
        if (z3 && !z1 && !z2)
            return std::nullopt;
        if (z1 && z2 && z3)
            return std::nullopt;
        return Snapshot(static_cast<std::uint8_t>(z1 | z2 << 1 | z3 << 2));
    }

    constexpr bool z1() const { return bits_ & 1; }
    constexpr bool z2() const { return bits_ & 2; }
    constexpr bool z3() const { return bits_ & 4; }
    constexpr std::uint8_t bits() const { return bits_; }

    constexpr SixValue value() const {
        switch (bits_) {
        case 0b101: return SixValue::T;
        case 0b001: return SixValue::T0;
        case 0b011: return SixValue::B;
        case 0b000: return SixValue::N;
        case 0b010: return SixValue::F0;
        default: return SixValue::F; // 0b110
        }
    }

    constexpr bool operator==(const Snapshot &) const = default;

    // Used by the algebra operations only; callers go through try_make/mk_snapshot.
    static constexpr Snapshot from_bits_unchecked(std::uint8_t bits) { return Snapshot(bits); }

private:
    constexpr explicit Snapshot(std::uint8_t bits) : bits_(bits) {}

    static constexpr std::uint8_t encode(SixValue v) {
        constexpr std::uint8_t table[] = {0b101, 0b001, 0b011, 0b000, 0b010, 0b110};
        return table[static_cast<int>(v)];
    }

    std::uint8_t bits_ = 0;
};

// Throws Error(ConstraintViolation) on (0,0,1) and (1,1,1).
Snapshot mk_snapshot(bool z1, bool z2, bool z3);

constexpr Snapshot conj(Snapshot z, Snapshot w) {
    const bool u1 = z.z1() && w.z1();
    const bool u2 = z.z2() || w.z2();
    const bool u3 = (z.z1() && z.z3() && w.z1() && w.z3()) || (z.z2() && z.z3()) ||
                    (w.z2() && w.z3());
    return Snapshot::from_bits_unchecked(static_cast<std::uint8_t>(u1 | u2 << 1 | u3 << 2));
}

constexpr Snapshot disj(Snapshot z, Snapshot w) {
    const bool u1 = z.z1() || w.z1();
    const bool u2 = z.z2() && w.z2();
    const bool u3 = (z.z2() && z.z3() && w.z2() && w.z3()) || (z.z1() && z.z3()) ||
                    (w.z1() && w.z3());
    return Snapshot::from_bits_unchecked(static_cast<std::uint8_t>(u1 | u2 << 1 | u3 << 2));
}

constexpr Snapshot neg(Snapshot z) {
    return Snapshot::from_bits_unchecked(
        static_cast<std::uint8_t>(z.z2() | z.z1() << 1 | z.z3() << 2));
}

constexpr Snapshot circ(Snapshot z) {
    return z.z3() ? Snapshot(SixValue::T) : Snapshot(SixValue::F);
}

constexpr Snapshot bullet(Snapshot z) { return neg(circ(z)); }

constexpr bool is_designated(Snapshot z) { return z.z1(); }

// Quantifier clauses over the instance values, taken as a whole:
//   forall: (/\ v1, \/ v2, /\(v3 & v1) | \/(v3 & v2))
//   exists: (\/ v1, /\ v2, /\(v3 & v2) | \/(v3 & v1))
Snapshot forall_value(std::span<const Snapshot> instances);
Snapshot exists_value(std::span<const Snapshot> instances);

} // namespace letf
