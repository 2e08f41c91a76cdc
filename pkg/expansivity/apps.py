from django.apps import AppConfig


class ExpansivityConfig(AppConfig):
    name = 'expansivity'
