#include "series_mirage/format.hpp"

#include <array>
#include <charconv>

#include "series_mirage/errors.hpp"

namespace series_mirage {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw InvalidInputError("format_double: conversion failed");
    return std::string(buf.data(), end);
}

nlohmann::json to_json(const ExpSum& s) {
    auto arr = nlohmann::json::array();
    for (const auto& term : s.terms()) {
        arr.push_back({{"re_c", term.coeff.real()},
                       {"im_c", term.coeff.imag()},
                       {"re_a", term.alpha.real()},
                       {"im_a", term.alpha.imag()}});
    }
    return arr;
}

nlohmann::json to_json(const TimePoly& p) {
    auto arr = nlohmann::json::array();
    for (const auto& c : p.coeffs()) arr.push_back(to_json(c));
    return arr;
}

ExpSum expsum_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw InvalidInputError("ExpSum JSON must be an array");
    std::vector<ExpTerm> raw;
    for (const auto& item : j) {
        try {
            raw.push_back({{item.at("re_c").get<double>(), item.at("im_c").get<double>()},
                           {item.at("re_a").get<double>(), item.at("im_a").get<double>()}});
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInputError(std::string("malformed ExpSum term: ") + e.what());
        }
    }
    return ExpSum::make(raw);
}

TimePoly timepoly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw InvalidInputError("TimePoly JSON must be an array");
    std::vector<ExpSum> coeffs;
    for (const auto& item : j) coeffs.push_back(expsum_from_json(item));
    return TimePoly(std::move(coeffs));
}

}  // namespace series_mirage
