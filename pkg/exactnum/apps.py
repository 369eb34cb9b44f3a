from django.apps import AppConfig


class ExactnumConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "exactnum"
