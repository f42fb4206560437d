from django.apps import AppConfig


class PipelineAppConfig(AppConfig):
    name = 'pipeline'
    verbose_name = 'Smoothing and outer-factor verification chains'
