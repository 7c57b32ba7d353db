"""Turn configuration definitions and fixture names into domain objects."""

from typing import Dict, Iterable, Optional, Union

import numpy as np

from ..cech.cover import Cover, make_cover
from ..cech.fixtures import cone_space, get_cover
from ..flow.experiments import FlowExperiment, build_experiment, field_model, get_flow
from ..model.config import ActionDefinition, CoverDefinition, FlowDefinition, SpaceDefinition
from ..orbit.fixtures import ActionFixture, build_action, get_action
from ..space.fixtures import SPACE_FIXTURES, build_space, get_space
from ..space.model import SpaceModel
from ..utils.errors import FixtureNotFoundError


def space_from_definition(definition: SpaceDefinition) -> SpaceModel:
    return build_space(
        definition.name,
        definition.ambient_dim,
        definition.membership,
        [(branch.map, branch.ranges) for branch in definition.sampler.branches],
        definition.sampler.points,
        definition.generators,
        definition.locally_closed,
    )


class DefinitionResolver:
    """Resolves space references against bundled fixtures and user-defined spaces."""

    def __init__(
        self, spaces: Iterable[SpaceDefinition] = (), rng: Optional[np.random.Generator] = None
    ):
        self.definitions: Dict[str, SpaceDefinition] = {d.name: d for d in spaces}
        self.rng = rng if rng is not None else np.random.default_rng(0)

    def space(self, ref: Union[str, SpaceDefinition]) -> SpaceModel:
        if isinstance(ref, SpaceDefinition):
            return space_from_definition(ref)
        if ref in self.definitions:
            return space_from_definition(self.definitions[ref])
        if ref == "cone":
            return cone_space(self.rng)
        if ref not in SPACE_FIXTURES:
            available = sorted(SPACE_FIXTURES) + sorted(self.definitions) + ["cone"]
            raise FixtureNotFoundError("space", ref, available)
        return get_space(ref)

    def flow(self, ref: Union[str, FlowDefinition]) -> FlowExperiment:
        if isinstance(ref, str):
            return get_flow(ref)
        model = field_model(
            self.space(ref.space),
            ref.field,
            ref.tangency,
            [(pv.point, pv.vector) for pv in ref.point_values],
            name=ref.name,
        )
        return build_experiment(
            ref.name, model, ref.start_points, ref.t_span, ref.exact, ref.collapsing
        )

    def cover(self, ref: Union[str, CoverDefinition]) -> Cover:
        if isinstance(ref, str):
            return get_cover(ref)
        return make_cover(
            ref.name,
            self.space(ref.space),
            ref.regions,
            [(item.indices, item.flag) for item in ref.intersections],
            ref.max_degree,
            ref.graph_radius,
        )

    def action(self, ref: Union[str, ActionDefinition]) -> ActionFixture:
        if isinstance(ref, str):
            return get_action(ref)
        return build_action(
            ref.name,
            ref.ambient_dim,
            ref.generators,
            ref.hilbert,
            ref.relations,
            ref.inequalities,
            ref.space,
        )
