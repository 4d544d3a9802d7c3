#ifndef GPDKIT_GPDKIT_HPP_
#define GPDKIT_GPDKIT_HPP_

#include "action.hpp"
#include "constructions.hpp"
#include "corpus.hpp"
#include "error.hpp"
#include "finite_groupoid.hpp"
#include "group_table.hpp"
#include "isomorphism.hpp"
#include "morphism.hpp"
#include "oracle.hpp"
#include "presented.hpp"
#include "standard_groupoids.hpp"
#include "subgroupoid.hpp"
#include "text_format.hpp"

#endif  // GPDKIT_GPDKIT_HPP_
