from behaviors.serializers.behavior_serializer import BehaviorSerializer
from local_polytope.serializers.polytope_serializer import MembershipResultSerializer
from local_polytope.services.membership_service import MembershipService

from ..base import BellCommand


class Command(BellCommand):
    help = 'Decide local-polytope membership; non-members get a violated Bell functional.'

    def add_command_arguments(self, parser):
        parser.add_argument('--cap', type=int, help='deterministic strategy cap (default 10^6)')
        parser.add_argument('--tolerance', type=float, help='float behaviors only (default 1e-9)')

    def execute_invocation(self, invocation):
        behavior = self.load(invocation.inputs[0], BehaviorSerializer)
        result = MembershipService(strategy_cap=invocation.cap, tolerance=invocation.tolerance).execute(behavior)
        self.emit(MembershipResultSerializer(result).data, invocation)
        if result.warning:
            self.summary(result.warning)
        if not result.is_member:
            self.property_fails(
                f"non_member: value {result.value} > local bound {result.certificate.local_bound}"
            )
        self.summary(f"member ({result.method})")
