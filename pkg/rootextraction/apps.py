from django.apps import AppConfig


class RootextractionConfig(AppConfig):
    name = 'rootextraction'
    verbose_name = 'Root extraction in l^e-torsion'
