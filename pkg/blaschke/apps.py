from django.apps import AppConfig


class BlaschkeConfig(AppConfig):
    name = 'blaschke'
    verbose_name = 'Blaschke products and counterexample families'
