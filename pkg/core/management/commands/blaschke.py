from blaschke.services.growth import grow_weighted_norm, growth_ledger
from blaschke.services.products import blaschke_coeffs
from core.management.base import CircleMapsCommand
from norms.types import WeightSeq
from spectrum.exceptions import PreconditionError
from spectrum.services.io import write_coeffs


def parse_zeros(text):
    try:
        return [complex(part.strip().replace(' ', '')) for part in text.split(',') if part.strip()]
    except ValueError as exc:
        raise PreconditionError(f"cannot read zeros {text!r}: {exc}") from exc


class Command(CircleMapsCommand):
    help = "Blaschke products: 'r1' grows a weighted norm by dilated factors, 'coeffs' writes a product's coefficients"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('action', choices=['r1', 'coeffs'])
        parser.add_argument('--weight', default='log')
        parser.add_argument('--stages', type=int, default=5)
        parser.add_argument('--growth', type=float, default=2.0)
        parser.add_argument('--zeros', default='', help="Comma-separated complex zeros, e.g. 0.5,0.3+0.4j")

    def run(self, action, weight, stages, growth, zeros, bandwidth, out, **options):
        if action == 'coeffs':
            coeffs = blaschke_coeffs(parse_zeros(zeros), bandwidth or 64)
            if out:
                write_coeffs(coeffs, out, threshold=0.0)
                self.stdout.write(f"wrote {out}")
            else:
                for n, value in zip(coeffs.indices, coeffs.values):
                    if n >= 0:
                        self.stdout.write(f"{n},{value.real:.17g},{value.imag:.17g}")
            return

        trace = grow_weighted_norm(WeightSeq.named(weight, 2), stages, growth)
        ledger = growth_ledger(trace)
        self.emit(trace.as_dict(), out)
        self.fail_on([ledger], out)
