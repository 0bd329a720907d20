import { Component, OnDestroy, OnInit } from '@angular/core';

@Component({ selector: 'app-splash', template: '' })
export class SplashComponent implements OnInit, OnDestroy {
  visible = true;
  private hideTimer?: ReturnType<typeof setTimeout>;

  ngOnInit() {
    this.hideTimer = setTimeout(() => (this.visible = false), 2000);
  }

  ngOnDestroy() {
    clearTimeout(this.hideTimer);
  }
}
