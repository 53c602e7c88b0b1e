#pragma once

#include "entrate/rational.hpp"
#include "entrate/spectrum.hpp"
#include "entrate/majorization.hpp"
#include "entrate/entropy.hpp"
#include "entrate/rates.hpp"
#include "entrate/oracle.hpp"
