#include "letf/algebra.hpp"

#include "letf/error.hpp"

#include <string>

namespace letf {

std::string_view to_string(SixValue v) {
    constexpr std::string_view names[] = {"T", "T0", "b", "n", "F0", "F"};
    return names[static_cast<int>(v)];
}

std::optional<SixValue> parse_value(std::string_view name) {
    for (SixValue v : all_values)
        if (to_string(v) == name)
            return v;
    return std::nullopt;
}

Snapshot mk_snapshot(bool z1, bool z2, bool z3) {
    if (auto s = Snapshot::try_make(z1, z2, z3))
        return *s;
    throw Error(ErrorKind::ConstraintViolation,
                "(" + std::to_string(z1) + "," + std::to_string(z2) + "," + std::to_string(z3) +
                    ") is not a snapshot");
}

Snapshot forall_value(std::span<const Snapshot> instances) {
    bool all1 = true, any2 = false, all_reliable_true = true, some_reliable_false = false;
    for (Snapshot v : instances) {
        all1 = all1 && v.z1();
        any2 = any2 || v.z2();
        all_reliable_true = all_reliable_true && v.z3() && v.z1();
        some_reliable_false = some_reliable_false || (v.z3() && v.z2());
    }
    return mk_snapshot(all1, any2, all_reliable_true || some_reliable_false);
}

Snapshot exists_value(std::span<const Snapshot> instances) {
    bool any1 = false, all2 = true, all_reliable_false = true, some_reliable_true = false;
    for (Snapshot v : instances) {
        any1 = any1 || v.z1();
        all2 = all2 && v.z2();
        all_reliable_false = all_reliable_false && v.z3() && v.z2();
        some_reliable_true = some_reliable_true || (v.z3() && v.z1());
    }
    return mk_snapshot(any1, all2, all_reliable_false || some_reliable_true);
}

} // namespace letf
