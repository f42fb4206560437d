from django.core.management.base import CommandError

from core.management.base import CHECKS_FAILED, CircleMapsCommand
from degree.services.spectral import degree_gap_inequality, degree_spectral
from degree.services.winding import degree_winding
from spectrum.services.io import read_map
from spectrum.services.transforms import analyze
from spectrum.types import UnimodularSamples


class Command(CircleMapsCommand):
    help = "Topological degree of a map given by a coefficient or sample file"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--in', required=True, dest='input', help="Coefficient or sample file")
        parser.add_argument('--method', choices=['winding', 'spectral', 'both'], default='both')

    def run(self, input, method, grid, bandwidth, out, **options):
        f = UnimodularSamples(read_map(input, grid))
        payload = {'input': input, 'N': f.N, 'method': method}
        winding = None
        if method in ('winding', 'both'):
            winding, max_step = degree_winding(f)
            payload.update({'winding': winding, 'max_step': max_step})
        if method in ('spectral', 'both'):
            coeffs = analyze(f.base, bandwidth)
            result = degree_spectral(coeffs, winding)
            payload.update(result.as_dict())
            payload['gap_inequality'] = degree_gap_inequality(coeffs).as_dict()
            payload['agrees'] = result.agrees
        self.emit(payload, out)
        if not payload.get('agrees', True):
            raise CommandError(
                f"winding {winding} and spectral degree {payload['rounded']} disagree",
                returncode=CHECKS_FAILED,
            )
