#pragma once

#include "dehn.hpp"
#include "error.hpp"
#include "field.hpp"
#include "free_group.hpp"
#include "presentation.hpp"
#include "rational.hpp"
#include "scheme.hpp"
#include "secure_sum.hpp"
#include "session.hpp"
#include "small_cancellation.hpp"
#include "tietze.hpp"
