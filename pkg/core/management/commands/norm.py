from core.management.base import CircleMapsCommand
from norms.services.sobolev import sobolev_integral, sobolev_spectral
from norms.types import SobolevParams
from spectrum.exceptions import PreconditionError
from spectrum.services.io import read_map
from spectrum.services.transforms import analyze


class Command(CircleMapsCommand):
    help = "Sobolev seminorm of a map given by a coefficient or sample file, in spectral or integral form"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--in', required=True, dest='input', help="Coefficient or sample file")
        parser.add_argument('--s', type=float, required=True)
        parser.add_argument('--side', choices=['one', 'two'], default='two')
        parser.add_argument('--form', choices=['spectral', 'integral'], default='spectral')
        parser.add_argument('--ncut', type=int, default=None, dest='n_cut',
                            help="Frequency cap N; the integral form defaults to the bandwidth")

    def run(self, input, s, side, form, n_cut, grid, bandwidth, out, workers, **options):
        samples = read_map(input, grid)
        coeffs = analyze(samples, bandwidth)
        params = SobolevParams(s=s, side=side, n_cut=n_cut)
        if form == 'spectral':
            value = sobolev_spectral(coeffs, params)
        else:
            if side != 'two':
                raise PreconditionError("the integral form is two-sided; pass --side two")
            n_cut = coeffs.M if n_cut is None else n_cut
            value = sobolev_integral(samples, s, n_cut, workers)
        self.emit({
            'value': value,
            'form': form,
            'params': {**params.model_dump(), 'n_cut': n_cut, 'input': input, 'N': samples.N, 'M': coeffs.M},
        }, out)
