#pragma once

#include "cdc/build.hpp"
#include "cdc/rewrite.hpp"

namespace cdc {

/// The 2-atom with an n-path input and an m-path output.
inline Complex atom2(int n, int m) {
    if (n < 1 || m < 1) fail(errc::bad_params, "atom2 requires positive path lengths");
    return cell(path(n), path(m));
}

/// A 2-globe whiskered with an edge on its output vertex: pastable along a
/// whole 0-boundary, but not pure, hence not constructible.
inline Complex whisk() {
    std::vector<ElementData> elems = {{"a", 0}, {"b", 0}, {"c", 0},
                                      {"e-", 1}, {"e+", 1}, {"w", 1}, {"z", 2}};
    std::vector<CoverData> covers = {
        {"e-", "a", Sign::minus}, {"e-", "b", Sign::plus},
        {"e+", "a", Sign::minus}, {"e+", "b", Sign::plus},
        {"w", "b", Sign::minus},  {"w", "c", Sign::plus},
        {"z", "e-", Sign::minus}, {"z", "e+", Sign::plus},
    };
    return Complex::validate(elems, covers);
}

/// The 9-element oriented thin poset whose top is not a constructible atom:
/// a 2-cell whose input consists of two disjoint edges.
inline Complex nonex9() {
    std::vector<ElementData> elems = {
        {"z1-", 0}, {"z1+", 0}, {"z2-", 0}, {"z2+", 0},
        {"y1-", 1}, {"y1+", 1}, {"y2-", 1}, {"y2+", 1},
        {"x", 2}};
    std::vector<CoverData> covers;
    for (const char* i : {"1", "2"})
        for (const char* a : {"-", "+"}) {
            std::string y = std::string("y") + i + a;
            covers.push_back({y, std::string("z") + i + "-", Sign::minus});
            covers.push_back({y, std::string("z") + i + "+", Sign::plus});
            covers.push_back({"x", y, *a == '-' ? Sign::minus : Sign::plus});
        }
    return Complex::validate(elems, covers);
}

namespace detail {
/// Four vertices and four outer edges shared by both halves of pw3.
inline void pw3_frame(std::vector<ElementData>& elems, std::vector<CoverData>& covers) {
    for (const char* v : {"a", "x1", "x2", "d"}) elems.push_back({v, 0});
    auto edge = [&](const char* name, const char* src, const char* tgt) {
        elems.push_back({name, 1});
        covers.push_back({name, src, Sign::minus});
        covers.push_back({name, tgt, Sign::plus});
    };
    edge("a>x1", "a", "x1");
    edge("a>x2", "a", "x2");
    edge("x1>d", "x1", "d");
    edge("x2>d", "x2", "d");
}
} // namespace detail

/// Input half of the non-loop-free 3-atom: a>x2 rewrites through the middle
/// edge y1, then on to x1>d.
inline Complex pw3_minus() {
    std::vector<ElementData> elems;
    std::vector<CoverData> covers;
    detail::pw3_frame(elems, covers);
    elems.push_back({"y1", 1});
    covers.push_back({"y1", "x1", Sign::minus});
    covers.push_back({"y1", "x2", Sign::plus});
    elems.push_back({"l-", 2});
    covers.push_back({"l-", "a>x2", Sign::minus});
    covers.push_back({"l-", "a>x1", Sign::plus});
    covers.push_back({"l-", "y1", Sign::plus});
    elems.push_back({"r-", 2});
    covers.push_back({"r-", "y1", Sign::minus});
    covers.push_back({"r-", "x2>d", Sign::minus});
    covers.push_back({"r-", "x1>d", Sign::plus});
    return Complex::validate(elems, covers);
}

/// Output half, with the middle edge y2 running the other way.
inline Complex pw3_plus() {
    std::vector<ElementData> elems;
    std::vector<CoverData> covers;
    detail::pw3_frame(elems, covers);
    elems.push_back({"y2", 1});
    covers.push_back({"y2", "x2", Sign::minus});
    covers.push_back({"y2", "x1", Sign::plus});
    elems.push_back({"l+", 2});
    covers.push_back({"l+", "a>x2", Sign::minus});
    covers.push_back({"l+", "y2", Sign::minus});
    covers.push_back({"l+", "a>x1", Sign::plus});
    elems.push_back({"r+", 2});
    covers.push_back({"r+", "x2>d", Sign::minus});
    covers.push_back({"r+", "y2", Sign::plus});
    covers.push_back({"r+", "x1>d", Sign::plus});
    return Complex::validate(elems, covers);
}

/// The 3-atom that is neither loop-free nor totally loop-free.
inline Complex pw3() { return cell(pw3_minus(), pw3_plus()); }

} // namespace cdc
