#pragma once

#include <benfordnet/benford.hpp>
#include <benfordnet/dataset.hpp>
#include <benfordnet/digits.hpp>
#include <benfordnet/errors.hpp>
#include <benfordnet/random.hpp>
#include <benfordnet/report.hpp>
#include <benfordnet/synth.hpp>
