#pragma once

#include <random>
#include <string>
#include <vector>

#include "abelicomp/finite_field.hpp"
#include "abelicomp/restriction.hpp"

namespace abelicomp::testing {

struct NamedClass {
    std::string name;
    Group group;
    ClassSpec spec;
};

inline std::vector<std::vector<int>> small_moduli() { return {{2}, {3}, {4}, {5}, {6}, {2, 2}, {2, 3}}; }

inline std::vector<FieldSpec> small_fields() {
    return {make_field(2, 1), make_field(3, 1), make_field(2, 2), make_field(5, 1)};
}

/// Every built-in class with window parameter d over the group (product class on fields only).
inline std::vector<NamedClass> builtin_classes(const Group& g, int d, const FieldSpec* field = nullptr) {
    std::vector<NamedClass> out;
    auto add = [&](ClassSpec spec) { out.push_back({spec.label + " over " + g.describe(), g, spec}); };
    add(mullen_class(d));
    for (bool weak : {false, true}) {
        add(carlitz_class(d, weak));
        add(window_sum_class(d, weak));
    }
    add(carlitz_class(d, true, true));
    if (field != nullptr) add(product_ne_one_class(*field, d));
    return out;
}

/// builtin_classes over every small group and field, d = 1..max_d.
inline std::vector<NamedClass> all_small_classes(int max_d) {
    std::vector<NamedClass> out;
    for (int d = 1; d <= max_d; ++d) {
        for (const auto& moduli : small_moduli()) {
            for (auto& c : builtin_classes(Group(moduli), d)) out.push_back(std::move(c));
        }
        for (const auto& field : small_fields()) {
            out.push_back({"product-ne-one d=" + std::to_string(d) + " over GF(" + std::to_string(field.q()) + ")",
                           field.additive_group(), product_ne_one_class(field, d)});
        }
    }
    return out;
}

inline GroupElement random_element(const Group& g, std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    return g.element_of(pick(rng));
}

}  // namespace abelicomp::testing
