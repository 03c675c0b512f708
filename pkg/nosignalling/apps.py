from django.apps import AppConfig


class NosignallingConfig(AppConfig):
    name = 'nosignalling'
