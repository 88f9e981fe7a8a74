#include "cmab/core/types.hpp"

#include <stdexcept>
#include <string>

namespace cmab {

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) {
    return mix_seed(mix_seed(parent) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

namespace {

void check_unit(double v, std::size_t i) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("mean vector entry " + std::to_string(i) + " = " +
                                    std::to_string(v) + " outside [0, 1]");
    }
}

}  // namespace

MeanVector::MeanVector(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) check_unit(values_[i], i);
}

MeanVector::MeanVector(std::size_t m, double fill) : values_(m, fill) {
    if (m > 0) check_unit(fill, 0);
}

void MeanVector::set(std::size_t i, double v) {
    check_unit(v, i);
    values_.at(i) = v;
}

}  // namespace cmab
