#pragma once

#include "turnsearch/certificate.hpp"
#include "turnsearch/equality_oracle.hpp"
#include "turnsearch/errors.hpp"
#include "turnsearch/game_sim.hpp"
#include "turnsearch/line_model.hpp"
#include "turnsearch/linear_program.hpp"
#include "turnsearch/numeric.hpp"
#include "turnsearch/randomized.hpp"
#include "turnsearch/simplex.hpp"
#include "turnsearch/star_model.hpp"
#include "turnsearch/strategy.hpp"
