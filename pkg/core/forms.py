from pathlib import Path

from django import forms

from core.types import SUITE_ORDER, SuiteConfig
from spectrum.types import is_power_of_two


class SuiteConfigForm(forms.Form):
    suites = forms.CharField(initial='all', help_text="Comma-separated subset of the suites, or 'all'")
    seed = forms.IntegerField(min_value=0, initial=0)
    grid = forms.IntegerField(min_value=16, initial=1024)
    bandwidth = forms.IntegerField(min_value=0, required=False)
    s = forms.FloatField(initial=0.25)
    input = forms.CharField(required=False)
    out = forms.CharField(required=False)
    workers = forms.IntegerField(min_value=1, required=False)

    def clean_suites(self):
        raw = self.cleaned_data.get('suites') or ''
        names = [name.strip() for name in raw.split(',') if name.strip()]
        if names == ['all']:
            return tuple(SUITE_ORDER)
        unknown = sorted(set(names) - set(SUITE_ORDER))
        if unknown:
            raise forms.ValidationError(f"Unknown suites: {', '.join(unknown)}; choose from {', '.join(SUITE_ORDER)}")
        if not names:
            raise forms.ValidationError("Select at least one suite")
        return tuple(name for name in SUITE_ORDER if name in names)

    def clean_grid(self):
        grid = self.cleaned_data.get('grid')
        if grid and not is_power_of_two(grid):
            raise forms.ValidationError("Grid size must be a power of two")
        return grid

    def clean_s(self):
        s = self.cleaned_data.get('s')
        if s is not None and not 0 < s < 1:
            raise forms.ValidationError("Exponent s must lie strictly between 0 and 1")
        return s

    def clean_input(self):
        path = self.cleaned_data.get('input')
        if path and not Path(path).exists():
            raise forms.ValidationError(f"Input file {path} does not exist")
        return path or None

    def clean(self):
        cleaned_data = super().clean()
        grid = cleaned_data.get('grid')
        bandwidth = cleaned_data.get('bandwidth')

        if grid and bandwidth is not None and 2 * bandwidth + 1 > grid:
            raise forms.ValidationError("Bandwidth M needs 2M+1 <= grid")

        return cleaned_data

    def to_config(self):
        data = self.cleaned_data
        return SuiteConfig(
            suites=data['suites'],
            seed=data['seed'],
            grid=data['grid'],
            bandwidth=data.get('bandwidth'),
            s=data['s'],
            input=data.get('input'),
            out=data.get('out') or None,
            workers=data.get('workers'),
        )
